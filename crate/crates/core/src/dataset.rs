//! Transaction databases: FIMI parsing, support counting, frequency pruning
//! with dense remapping, and a seeded sparse-data generator.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, BufRead, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, Zipf};
use thiserror::Error;

use crate::Rank;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("line {line}: invalid item token {token:?}")]
    Parse { line: usize, token: String },
    #[error("line {line}: item {token} does not fit in 32 bits")]
    Overflow { line: usize, token: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, DatasetError>;

/// Transactions as read, with original item labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawDatabase {
    transactions: Vec<Vec<u32>>,
    label_universe: BTreeSet<u32>,
}

impl RawDatabase {
    /// Builds a database, sorting and deduplicating every transaction.
    /// Empty transactions are kept.
    pub fn from_transactions(transactions: Vec<Vec<u32>>) -> Self {
        let mut label_universe = BTreeSet::new();
        let transactions = transactions
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t.dedup();
                label_universe.extend(t.iter().copied());
                t
            })
            .collect();
        RawDatabase {
            transactions,
            label_universe,
        }
    }

    pub fn transactions(&self) -> &[Vec<u32>] {
        &self.transactions
    }

    pub fn label_universe(&self) -> &BTreeSet<u32> {
        &self.label_universe
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    /// Writes the database in FIMI format, one transaction per line.
    pub fn write_fimi<W: Write>(&self, mut out: W) -> io::Result<()> {
        for t in &self.transactions {
            let mut first = true;
            for item in t {
                if !first {
                    out.write_all(b" ")?;
                }
                write!(out, "{item}")?;
                first = false;
            }
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_fimi_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_fimi(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("FIMI output is ASCII")
    }
}

/// Bijection between surviving original labels and dense ranks `0..F`.
/// Ranks follow ascending label order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ItemMap {
    label_of_rank: Vec<u32>,
}

impl ItemMap {
    pub fn item_count(&self) -> usize {
        self.label_of_rank.len()
    }

    pub fn label_of(&self, rank: Rank) -> u32 {
        self.label_of_rank[rank as usize]
    }

    pub fn rank_of(&self, label: u32) -> Option<Rank> {
        self.label_of_rank
            .binary_search(&label)
            .ok()
            .map(|r| r as Rank)
    }

    /// Maps ranks back to labels, ascending.
    pub fn labels_of(&self, ranks: &[Rank]) -> Vec<u32> {
        let mut labels: Vec<u32> = ranks.iter().map(|&r| self.label_of(r)).collect();
        labels.sort_unstable();
        labels
    }
}

/// Pruned database over dense ranks. Every rank is frequent at `minsup`
/// and no transaction is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransactionDatabase {
    transactions: Vec<Vec<Rank>>,
    item_count: usize,
    minsup: u32,
}

impl TransactionDatabase {
    pub fn transactions(&self) -> &[Vec<Rank>] {
        &self.transactions
    }

    pub fn item_count(&self) -> usize {
        self.item_count
    }

    pub fn minsup(&self) -> u32 {
        self.minsup
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn cell_count(&self) -> usize {
        self.transactions.iter().map(Vec::len).sum()
    }
}

/// Parses FIMI text: one transaction per non-blank line, whitespace
/// separated non-negative integers.
pub fn parse_fimi<R: BufRead>(reader: R) -> Result<RawDatabase> {
    let mut transactions = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut items = Vec::new();
        for token in line.split_whitespace() {
            items.push(parse_item(token, idx + 1)?);
        }
        transactions.push(items);
    }
    Ok(RawDatabase::from_transactions(transactions))
}

pub fn parse_fimi_str(text: &str) -> Result<RawDatabase> {
    parse_fimi(text.as_bytes())
}

fn parse_item(token: &str, line: usize) -> Result<u32> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(DatasetError::Parse {
            line,
            token: token.to_owned(),
        });
    }
    token.parse::<u32>().map_err(|_| DatasetError::Overflow {
        line,
        token: token.to_owned(),
    })
}

/// Number of transactions containing each label.
pub fn global_supports(db: &RawDatabase) -> BTreeMap<u32, u32> {
    let mut supports = BTreeMap::new();
    for t in db.transactions() {
        for &item in t {
            *supports.entry(item).or_insert(0) += 1;
        }
    }
    supports
}

/// Drops items below `minsup`, remaps the survivors to dense ranks in label
/// order and removes transactions left empty.
pub fn prune_and_remap(db: &RawDatabase, minsup: u32) -> Result<(TransactionDatabase, ItemMap)> {
    if minsup == 0 {
        return Err(DatasetError::InvalidArgument(
            "minimum support must be at least 1".into(),
        ));
    }
    let label_of_rank: Vec<u32> = global_supports(db)
        .into_iter()
        .filter(|&(_, s)| s >= minsup)
        .map(|(label, _)| label)
        .collect();
    let map = ItemMap { label_of_rank };
    let transactions: Vec<Vec<Rank>> = db
        .transactions()
        .iter()
        // Labels within a transaction ascend, and so do their ranks.
        .map(|t| t.iter().filter_map(|&l| map.rank_of(l)).collect::<Vec<_>>())
        .filter(|t| !t.is_empty())
        .collect();
    let db = TransactionDatabase {
        transactions,
        item_count: map.item_count(),
        minsup,
    };
    Ok((db, map))
}

/// Average transaction length; 0 for an empty list.
pub fn atl<T>(transactions: &[Vec<T>]) -> f64 {
    if transactions.is_empty() {
        return 0.0;
    }
    let total: usize = transactions.iter().map(Vec::len).sum();
    total as f64 / transactions.len() as f64
}

/// Parameters of the synthetic sparse generator.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSpec {
    pub n_transactions: usize,
    pub n_items: usize,
    pub avg_len: usize,
    pub seed: u64,
    /// Exponent of the Zipf item-popularity law.
    pub skew: f64,
}

impl SparseSpec {
    pub const DEFAULT_SKEW: f64 = 1.0;

    pub fn new(n_transactions: usize, n_items: usize, avg_len: usize, seed: u64) -> Self {
        SparseSpec {
            n_transactions,
            n_items,
            avg_len,
            seed,
            skew: Self::DEFAULT_SKEW,
        }
    }

    pub fn generate(&self) -> Result<RawDatabase> {
        if self.avg_len == 0 || self.avg_len > self.n_items {
            return Err(DatasetError::InvalidArgument(format!(
                "average length {} must be in 1..={} (item count)",
                self.avg_len, self.n_items
            )));
        }
        if self.n_items > u32::MAX as usize {
            return Err(DatasetError::InvalidArgument("too many items".into()));
        }
        if !(self.skew.is_finite() && self.skew >= 0.0) {
            return Err(DatasetError::InvalidArgument(format!(
                "skew {} must be a finite non-negative number",
                self.skew
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        // Popularity rank -> label, so popular items are scattered over the
        // label range instead of always being the smallest labels.
        let mut labels: Vec<u32> = (0..self.n_items as u32).collect();
        labels.shuffle(&mut rng);

        let lengths = Poisson::new(self.avg_len as f64)
            .map_err(|e| DatasetError::InvalidArgument(e.to_string()))?;
        let popularity = Zipf::new(self.n_items as f64, self.skew)
            .map_err(|e| DatasetError::InvalidArgument(e.to_string()))?;

        let mut used = vec![false; self.n_items];
        let mut transactions = Vec::with_capacity(self.n_transactions);
        for _ in 0..self.n_transactions {
            let len = (lengths.sample(&mut rng) as usize).clamp(1, self.n_items);
            let mut picked = Vec::with_capacity(len);
            let mut attempts = 0;
            while picked.len() < len && attempts < 32 * len {
                attempts += 1;
                let pop = popularity.sample(&mut rng) as usize - 1;
                if !used[pop] {
                    used[pop] = true;
                    picked.push(pop);
                }
            }
            // Long transactions over few items can starve the rejection
            // loop; top up uniformly from what is left.
            while picked.len() < len {
                let pop = rng.random_range(0..self.n_items);
                if !used[pop] {
                    used[pop] = true;
                    picked.push(pop);
                }
            }
            for &p in &picked {
                used[p] = false;
            }
            transactions.push(picked.into_iter().map(|p| labels[p]).collect());
        }
        Ok(RawDatabase::from_transactions(transactions))
    }
}

/// Seeded sparse database with Zipf-skewed item popularity and
/// Poisson-distributed transaction lengths clamped to `1..=n_items`.
pub fn gen_sparse(
    n_transactions: usize,
    n_items: usize,
    avg_len: usize,
    seed: u64,
) -> Result<RawDatabase> {
    SparseSpec::new(n_transactions, n_items, avg_len, seed).generate()
}
