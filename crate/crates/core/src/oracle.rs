//! Reference miners used to check [`crate::miner`].
//!
//! [`enumerate_fi_bruteforce`] scans the database once per candidate
//! itemset; [`maximal_filter`] keeps the ⊆-maximal ones. Neither shares
//! code with the hybrid miner's counting or search.
//!
//! [`mine_bitmap_baseline`] is a conventional vertical-bitmap maximal miner:
//! one transaction bitset per item, supports by intersection and popcount,
//! the same DFS with PEP/FHUT/HUTMFI and dynamic reordering, and no
//! projected-database machinery. It doubles as the benchmark baseline.

use std::collections::HashSet;

use thiserror::Error;

use crate::bitset::Bitset;
use crate::dataset::TransactionDatabase;
use crate::miner::MfiStore;
use crate::Rank;

/// Largest item universe the brute-force enumerator accepts.
pub const BRUTE_FORCE_MAX_ITEMS: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("brute-force oracle supports at most {max} items, database has {items}")]
    Capacity { items: usize, max: usize },
}

/// Every frequent itemset with its exact support.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequentSet {
    pub itemsets: Vec<(Vec<Rank>, u32)>,
}

impl FrequentSet {
    pub fn len(&self) -> usize {
        self.itemsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.itemsets.is_empty()
    }

    pub fn sorted(&self) -> Vec<(Vec<Rank>, u32)> {
        let mut v = self.itemsets.clone();
        v.sort();
        v
    }
}

/// Enumerates all non-empty itemsets with support ≥ `minsup`, level by
/// level. A candidate is only scanned when all its immediate subsets were
/// frequent.
pub fn enumerate_fi_bruteforce(
    db: &TransactionDatabase,
    minsup: u32,
) -> Result<FrequentSet, OracleError> {
    let items = db.item_count();
    if items > BRUTE_FORCE_MAX_ITEMS {
        return Err(OracleError::Capacity {
            items,
            max: BRUTE_FORCE_MAX_ITEMS,
        });
    }
    let masks: Vec<u32> = db
        .transactions()
        .iter()
        .map(|t| t.iter().fold(0u32, |m, &i| m | 1 << i))
        .collect();
    let support = |cand: u32| masks.iter().filter(|&&m| m & cand == cand).count() as u32;

    let mut out = Vec::new();
    let mut level: Vec<u32> = Vec::new();
    for i in 0..items {
        let cand = 1u32 << i;
        let s = support(cand);
        if s >= minsup {
            level.push(cand);
            out.push((cand, s));
        }
    }
    while !level.is_empty() {
        let known: HashSet<u32> = level.iter().copied().collect();
        let mut next = Vec::new();
        for &set in &level {
            let top = 31 - set.leading_zeros() as usize;
            for i in top + 1..items {
                let cand = set | 1 << i;
                let all_subsets_frequent = (0..items)
                    .filter(|&j| cand & (1 << j) != 0)
                    .all(|j| known.contains(&(cand & !(1 << j))));
                if !all_subsets_frequent {
                    continue;
                }
                let s = support(cand);
                if s >= minsup {
                    next.push(cand);
                    out.push((cand, s));
                }
            }
        }
        level = next;
    }

    Ok(FrequentSet {
        itemsets: out
            .into_iter()
            .map(|(mask, s)| (mask_items(mask), s))
            .collect(),
    })
}

fn mask_items(mask: u32) -> Vec<Rank> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Keeps the itemsets of `fi` that have no frequent one-item extension,
/// which for a downward-closed family are exactly the maximal ones.
pub fn maximal_filter(fi: &FrequentSet) -> MfiStore {
    let universe: Vec<Rank> = {
        let mut u: Vec<Rank> = fi.itemsets.iter().flat_map(|(s, _)| s.iter().copied()).collect();
        u.sort_unstable();
        u.dedup();
        u
    };
    let item_count = universe.last().map_or(0, |&m| m as usize + 1);
    let present: HashSet<Vec<Rank>> = fi.itemsets.iter().map(|(s, _)| sorted(s)).collect();

    let mut result = MfiStore::new(item_count);
    let mut maximal: Vec<(Vec<Rank>, u32)> = fi
        .itemsets
        .iter()
        .map(|(s, sup)| (sorted(s), *sup))
        .filter(|(s, _)| {
            universe.iter().filter(|i| !s.contains(i)).all(|&i| {
                let mut ext = s.clone();
                ext.push(i);
                ext.sort_unstable();
                !present.contains(&ext)
            })
        })
        .collect();
    maximal.sort();
    for (s, sup) in maximal {
        result.push(&s, sup);
    }
    result
}

fn sorted(s: &[Rank]) -> Vec<Rank> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v
}

/// Counters from a baseline run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BaselineStats {
    pub nodes_explored: u64,
    /// 64-bit words processed by tidset intersections.
    pub words_intersected: u64,
}

pub fn mine_bitmap_baseline(db: &TransactionDatabase, minsup: u32) -> MfiStore {
    mine_bitmap_baseline_with_stats(db, minsup).0
}

pub fn mine_bitmap_baseline_with_stats(
    db: &TransactionDatabase,
    minsup: u32,
) -> (MfiStore, BaselineStats) {
    assert!(minsup >= 1, "minimum support must be at least 1");
    let n = db.len();
    let mut tidsets = vec![Bitset::new(n); db.item_count()];
    for (t, items) in db.transactions().iter().enumerate() {
        for &i in items {
            tidsets[i as usize].insert(t);
        }
    }
    let mut baseline = Baseline {
        tidsets,
        minsup,
        mfi: MfiStore::new(db.item_count()),
        stats: BaselineStats::default(),
    };
    if n as u32 >= minsup && db.item_count() > 0 {
        let all = Bitset::from_indices(n, 0..n);
        let tail: Vec<Rank> = (0..db.item_count() as Rank).collect();
        baseline.expand(Vec::new(), &all, n as u32, tail);
    }
    (baseline.mfi, baseline.stats)
}

struct Baseline {
    tidsets: Vec<Bitset>,
    minsup: u32,
    mfi: MfiStore,
    stats: BaselineStats,
}

impl Baseline {
    /// Returns whether head ∪ tail turned out frequent.
    fn expand(&mut self, mut head: Vec<Rank>, tids: &Bitset, support: u32, tail: Vec<Rank>) -> bool {
        self.stats.nodes_explored += 1;
        let mut ext: Vec<(Rank, u32)> = Vec::with_capacity(tail.len());
        let mut all_frequent = true;
        for &y in &tail {
            let s = tids.intersection_count(&self.tidsets[y as usize]) as u32;
            self.stats.words_intersected += tids.words().len() as u64;
            if s < self.minsup {
                all_frequent = false;
            } else if s == support {
                head.push(y);
            } else {
                ext.push((y, s));
            }
        }
        ext.sort_by_key(|&(y, s)| (s, y));

        if ext.is_empty() {
            self.mfi.maximality_insert(&head, support);
            return all_frequent;
        }

        let mut first_hut = false;
        for (k, &(x, s)) in ext.iter().enumerate() {
            let child_tail: Vec<Rank> = ext[k + 1..].iter().map(|&(y, _)| y).collect();
            let mut child_head = head.clone();
            child_head.push(x);
            let mut hut = child_head.clone();
            hut.extend_from_slice(&child_tail);
            let hut_frequent = if self.mfi.contains_superset(&hut) {
                true
            } else {
                let mut child_tids = tids.clone();
                child_tids.intersect_with(&self.tidsets[x as usize]);
                self.stats.words_intersected += tids.words().len() as u64;
                self.expand(child_head, &child_tids, s, child_tail)
            };
            if k == 0 {
                first_hut = hut_frequent;
                if hut_frequent {
                    break;
                }
            }
        }
        all_frequent && first_hut
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{gen_sparse, prune_and_remap, RawDatabase};
    use crate::test_support::sample;

    #[test]
    fn bruteforce_sample() {
        let (db, _) = sample(2);
        let fi = enumerate_fi_bruteforce(&db, 2).unwrap();
        // a=0, b=1, c=2 after pruning.
        assert_eq!(
            fi.sorted(),
            vec![(vec![0], 3), (vec![0, 2], 2), (vec![1], 2), (vec![2], 4)]
        );
        let (db, _) = sample(5);
        assert!(enumerate_fi_bruteforce(&db, 5).unwrap().is_empty());
        let (db, _) = prune_and_remap(&RawDatabase::from_transactions(vec![vec![1], vec![1]]), 2).unwrap();
        assert_eq!(enumerate_fi_bruteforce(&db, 2).unwrap().sorted(), vec![(vec![0], 2)]);
    }

    #[test]
    fn bruteforce_guard() {
        let raw = RawDatabase::from_transactions(vec![(0..30).collect()]);
        let (db, _) = prune_and_remap(&raw, 1).unwrap();
        assert_eq!(
            enumerate_fi_bruteforce(&db, 1),
            Err(OracleError::Capacity { items: 30, max: 24 })
        );
    }

    #[test]
    fn filter_examples() {
        let (db, _) = sample(2);
        let fi = enumerate_fi_bruteforce(&db, 2).unwrap();
        assert_eq!(
            maximal_filter(&fi).to_sorted_vec(),
            vec![(vec![0, 2], 2), (vec![1], 2)]
        );
        let single = FrequentSet {
            itemsets: vec![(vec![3], 7)],
        };
        assert_eq!(maximal_filter(&single).to_sorted_vec(), vec![(vec![3], 7)]);
        assert!(maximal_filter(&FrequentSet::default()).is_empty());
    }

    #[test]
    fn baseline_sample() {
        let (db, _) = sample(2);
        assert_eq!(
            mine_bitmap_baseline(&db, 2).to_sorted_vec(),
            vec![(vec![0, 2], 2), (vec![1], 2)]
        );
        let (db, _) = sample(1);
        // a,b,c,d,e = 0..5
        assert_eq!(
            mine_bitmap_baseline(&db, 1).to_sorted_vec(),
            vec![(vec![0, 1, 3], 1), (vec![0, 2, 4], 1), (vec![1, 2], 1)]
        );
    }

    #[test]
    fn baseline_matches_bruteforce_on_generated_data() {
        for seed in 0..40 {
            let raw = gen_sparse(30, 12, 4, seed).unwrap();
            for minsup in 1..=3 {
                let (db, _) = prune_and_remap(&raw, minsup).unwrap();
                let fi = enumerate_fi_bruteforce(&db, minsup).unwrap();
                let expected = maximal_filter(&fi);
                assert!(expected.is_antichain());
                assert_eq!(
                    mine_bitmap_baseline(&db, minsup).to_sorted_vec(),
                    expected.to_sorted_vec(),
                    "seed {seed} minsup {minsup}"
                );
            }
        }
    }

    #[test]
    fn bruteforce_is_downward_closed() {
        let raw = gen_sparse(40, 10, 4, 9).unwrap();
        let (db, _) = prune_and_remap(&raw, 2).unwrap();
        let fi = enumerate_fi_bruteforce(&db, 2).unwrap();
        let lookup: std::collections::HashMap<Vec<Rank>, u32> = fi.itemsets.iter().cloned().collect();
        for (set, sup) in &fi.itemsets {
            for drop in 0..set.len() {
                if set.len() == 1 {
                    break;
                }
                let mut sub = set.clone();
                sub.remove(drop);
                assert!(lookup[&sub] >= *sup);
            }
        }
    }
}
