//! Hybrid database representation.
//!
//! Every item occurrence is one [`Cell`] in a flat array, grouped by
//! transaction. Cells carry four kinds of navigation:
//!
//! - header links: per item, the first cell holding that item;
//! - vertical links: per cell, the previous/next cell with the same item;
//! - horizontal links: per cell, the previous/next cell in the same transaction;
//! - bitmap links: per transaction, a bitmap over item ranks.
//!
//! The store is immutable once built. A search node's projected database is
//! a [`Pdr`]: the ascending list of transactions that contain the node's head.
//! Supports of the node's tail items are counted either by walking each
//! projected transaction's horizontal chain or by probing its bitmap,
//! depending on how long the projected transactions are relative to the
//! tail (see [`select_mode`]).

use std::fmt;
use std::str::FromStr;

use crate::bitset::Bitset;
use crate::dataset::TransactionDatabase;
use crate::Rank;

const NIL: u32 = u32::MAX;

#[inline]
fn link(raw: u32) -> Option<usize> {
    (raw != NIL).then_some(raw as usize)
}

/// One item occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    item: Rank,
    txn: u32,
    h_prev: u32,
    h_next: u32,
    v_prev: u32,
    v_next: u32,
}

impl Cell {
    pub fn item(&self) -> Rank {
        self.item
    }

    pub fn txn(&self) -> usize {
        self.txn as usize
    }

    pub fn h_prev(&self) -> Option<usize> {
        link(self.h_prev)
    }

    pub fn h_next(&self) -> Option<usize> {
        link(self.h_next)
    }

    pub fn v_prev(&self) -> Option<usize> {
        link(self.v_prev)
    }

    pub fn v_next(&self) -> Option<usize> {
        link(self.v_next)
    }
}

#[derive(Debug, Clone)]
pub struct HdrStore {
    cells: Vec<Cell>,
    /// `txn_offsets[t]..txn_offsets[t + 1]` are the cells of transaction `t`.
    txn_offsets: Vec<u32>,
    /// Row-major, `words_per_txn` words per transaction.
    txn_bitmap: Vec<u64>,
    words_per_txn: usize,
    item_first_cell: Vec<u32>,
    item_support: Vec<u32>,
}

impl HdrStore {
    pub fn build(db: &TransactionDatabase) -> Self {
        let item_count = db.item_count();
        let n_txns = db.len();
        assert!(
            db.cell_count() < NIL as usize && n_txns < NIL as usize,
            "database too large for 32-bit cell links"
        );
        let words_per_txn = item_count.div_ceil(64);
        let mut cells = Vec::with_capacity(db.cell_count());
        let mut txn_offsets = Vec::with_capacity(n_txns + 1);
        let mut txn_bitmap = vec![0u64; n_txns * words_per_txn];
        let mut item_first_cell = vec![NIL; item_count];
        let mut item_last_cell = vec![NIL; item_count];
        let mut item_support = vec![0u32; item_count];

        for (t, items) in db.transactions().iter().enumerate() {
            let start = cells.len() as u32;
            txn_offsets.push(start);
            let row = &mut txn_bitmap[t * words_per_txn..(t + 1) * words_per_txn];
            for (k, &item) in items.iter().enumerate() {
                let idx = start + k as u32;
                let i = item as usize;
                let v_prev = item_last_cell[i];
                if v_prev == NIL {
                    item_first_cell[i] = idx;
                } else {
                    cells[v_prev as usize] = Cell {
                        v_next: idx,
                        ..cells[v_prev as usize]
                    };
                }
                item_last_cell[i] = idx;
                item_support[i] += 1;
                row[i / 64] |= 1 << (i % 64);
                cells.push(Cell {
                    item,
                    txn: t as u32,
                    h_prev: if k == 0 { NIL } else { idx - 1 },
                    h_next: if k + 1 == items.len() { NIL } else { idx + 1 },
                    v_prev,
                    v_next: NIL,
                });
            }
        }
        txn_offsets.push(cells.len() as u32);

        HdrStore {
            cells,
            txn_offsets,
            txn_bitmap,
            words_per_txn,
            item_first_cell,
            item_support,
        }
    }

    pub fn num_txns(&self) -> usize {
        self.txn_offsets.len() - 1
    }

    pub fn item_count(&self) -> usize {
        self.item_first_cell.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, idx: usize) -> &Cell {
        &self.cells[idx]
    }

    /// Header link of transaction `t`: its first cell.
    pub fn txn_first_cell(&self, t: usize) -> Option<usize> {
        let start = self.txn_offsets[t];
        (start < self.txn_offsets[t + 1]).then_some(start as usize)
    }

    pub fn txn_len(&self, t: usize) -> usize {
        (self.txn_offsets[t + 1] - self.txn_offsets[t]) as usize
    }

    /// Header link of `item` over the full database.
    pub fn item_first_cell(&self, item: Rank) -> Option<usize> {
        link(self.item_first_cell[item as usize])
    }

    /// Global support of `item`.
    pub fn item_support(&self, item: Rank) -> u32 {
        self.item_support[item as usize]
    }

    pub fn txn_bitmap(&self, t: usize) -> &[u64] {
        &self.txn_bitmap[t * self.words_per_txn..(t + 1) * self.words_per_txn]
    }

    #[inline]
    pub fn txn_contains(&self, t: usize, item: Rank) -> bool {
        let i = item as usize;
        self.txn_bitmap[t * self.words_per_txn + i / 64] & (1 << (i % 64)) != 0
    }

    /// Cells of transaction `t` following horizontal links.
    pub fn h_chain(&self, t: usize) -> impl Iterator<Item = &Cell> + '_ {
        let mut next = self.txn_first_cell(t);
        std::iter::from_fn(move || {
            let cell = &self.cells[next?];
            next = cell.h_next();
            Some(cell)
        })
    }

    /// Cells holding `item` following vertical links, in transaction order.
    pub fn v_chain(&self, item: Rank) -> impl Iterator<Item = &Cell> + '_ {
        let mut next = self.item_first_cell(item);
        std::iter::from_fn(move || {
            let cell = &self.cells[next?];
            next = cell.v_next();
            Some(cell)
        })
    }

    /// Items of transaction `t` read straight from the cell array, ignoring
    /// links.
    fn raw_items(&self, t: usize) -> impl Iterator<Item = Rank> + '_ {
        let range = self.txn_offsets[t] as usize..self.txn_offsets[t + 1] as usize;
        self.cells[range].iter().map(|c| c.item)
    }
}

/// Projected database of a search node.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Pdr {
    txns: Vec<u32>,
    restricted_length_sum: u64,
}

impl Pdr {
    /// Every transaction, with the whole item universe as tail.
    pub fn root(store: &HdrStore) -> Self {
        Pdr {
            txns: (0..store.num_txns() as u32).collect(),
            restricted_length_sum: store.cells.len() as u64,
        }
    }

    /// Builds a projection from an explicit ascending transaction list,
    /// measuring lengths over `tail`.
    pub fn from_txns(store: &HdrStore, txns: Vec<u32>, tail: &[Rank]) -> Self {
        debug_assert!(txns.windows(2).all(|w| w[0] < w[1]));
        let mut pdr = Pdr {
            txns,
            restricted_length_sum: 0,
        };
        let mut scratch = Scratch::new(store.item_count());
        pdr.restricted_length_sum = scratch.restricted_length(store, &pdr.txns, tail);
        pdr
    }

    pub fn txns(&self) -> &[u32] {
        &self.txns
    }

    pub fn len(&self) -> usize {
        self.txns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.txns.is_empty()
    }

    /// Number of cells in these transactions whose item is in the tail the
    /// projection was built for.
    pub fn restricted_length_sum(&self) -> u64 {
        self.restricted_length_sum
    }

    /// Average projected transaction length over the tail; 0 when empty.
    pub fn atl(&self) -> f64 {
        if self.txns.is_empty() {
            0.0
        } else {
            self.restricted_length_sum as f64 / self.txns.len() as f64
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CostCounters {
    /// Tail-member cells visited by horizontal counting.
    pub cells_touched: u64,
    /// Bitmap probes made by bitmap counting.
    pub bit_tests: u64,
}

impl CostCounters {
    pub fn add(&mut self, other: &CostCounters) {
        self.cells_touched += other.cells_touched;
        self.bit_tests += other.bit_tests;
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum CountMode {
    Horizontal,
    Bitmap,
    #[default]
    Auto,
}

impl CountMode {
    pub const ALL: [CountMode; 3] = [CountMode::Horizontal, CountMode::Bitmap, CountMode::Auto];

    /// Concrete mode for counting `tail_len` items over `pdr`.
    pub fn resolve(self, pdr: &Pdr, tail_len: usize) -> CountMode {
        match self {
            CountMode::Auto => select_mode(pdr.atl(), tail_len),
            fixed => fixed,
        }
    }
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMode::Horizontal => "horizontal",
            CountMode::Bitmap => "bitmap",
            CountMode::Auto => "auto",
        })
    }
}

impl FromStr for CountMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "horizontal" => Ok(CountMode::Horizontal),
            "bitmap" => Ok(CountMode::Bitmap),
            "auto" => Ok(CountMode::Auto),
            other => Err(format!("unknown counting mode {other:?}")),
        }
    }
}

/// Horizontal when the projected transactions average strictly less than
/// half the tail size, bitmap otherwise.
pub fn select_mode(pdr_atl: f64, tail_size: usize) -> CountMode {
    if pdr_atl < tail_size as f64 / 2.0 {
        CountMode::Horizontal
    } else {
        CountMode::Bitmap
    }
}

/// Reusable per-run buffers sized to the item universe.
#[derive(Debug, Clone)]
pub struct Scratch {
    slot: Vec<u32>,
    mark: Bitset,
}

impl Scratch {
    pub fn new(item_count: usize) -> Self {
        Scratch {
            slot: vec![NIL; item_count],
            mark: Bitset::new(item_count),
        }
    }

    /// Supports of each tail item within `pdr`, written to `out` in tail
    /// order.
    pub fn count_supports(
        &mut self,
        store: &HdrStore,
        pdr: &Pdr,
        tail: &[Rank],
        mode: CountMode,
        counters: &mut CostCounters,
        out: &mut Vec<u32>,
    ) -> CountMode {
        out.clear();
        out.resize(tail.len(), 0);
        let mode = mode.resolve(pdr, tail.len());
        match mode {
            CountMode::Horizontal => {
                for (k, &y) in tail.iter().enumerate() {
                    self.slot[y as usize] = k as u32;
                }
                let mut touched = 0u64;
                for &t in &pdr.txns {
                    let mut next = store.txn_offsets[t as usize];
                    if next == store.txn_offsets[t as usize + 1] {
                        continue;
                    }
                    while next != NIL {
                        let cell = &store.cells[next as usize];
                        let s = self.slot[cell.item as usize];
                        if s != NIL {
                            out[s as usize] += 1;
                            touched += 1;
                        }
                        next = cell.h_next;
                    }
                }
                for &y in tail {
                    self.slot[y as usize] = NIL;
                }
                counters.cells_touched += touched;
            }
            CountMode::Bitmap => {
                let wpt = store.words_per_txn;
                for &t in &pdr.txns {
                    let row = &store.txn_bitmap[t as usize * wpt..(t as usize + 1) * wpt];
                    for (k, &y) in tail.iter().enumerate() {
                        let i = y as usize;
                        out[k] += ((row[i / 64] >> (i % 64)) & 1) as u32;
                    }
                }
                counters.bit_tests += pdr.txns.len() as u64 * tail.len() as u64;
            }
            CountMode::Auto => unreachable!("resolve never yields Auto"),
        }
        mode
    }

    /// Child projection of `parent` on item `y`, measured over `tail_after`.
    pub fn project_vertical(
        &mut self,
        store: &HdrStore,
        parent: &Pdr,
        y: Rank,
        tail_after: &[Rank],
    ) -> Pdr {
        let txns: Vec<u32> = if parent.txns.len() == store.num_txns() {
            // Unrestricted parent: the child is exactly y's vertical chain.
            store.v_chain(y).map(|c| c.txn).collect()
        } else {
            parent
                .txns
                .iter()
                .copied()
                .filter(|&t| store.txn_contains(t as usize, y))
                .collect()
        };
        let restricted_length_sum = self.restricted_length(store, &txns, tail_after);
        Pdr {
            txns,
            restricted_length_sum,
        }
    }

    fn restricted_length(&mut self, store: &HdrStore, txns: &[u32], tail: &[Rank]) -> u64 {
        if tail.is_empty() {
            return 0;
        }
        for &y in tail {
            self.mark.insert(y as usize);
        }
        let mut sum = 0u64;
        for &t in txns {
            let range = store.txn_offsets[t as usize] as usize..store.txn_offsets[t as usize + 1] as usize;
            sum += store.cells[range]
                .iter()
                .filter(|c| self.mark.contains(c.item as usize))
                .count() as u64;
        }
        for &y in tail {
            self.mark.remove(y as usize);
        }
        sum
    }
}

/// Support of every tail item within `pdr`, in tail order.
pub fn count_supports(
    store: &HdrStore,
    pdr: &Pdr,
    tail: &[Rank],
    mode: CountMode,
    counters: &mut CostCounters,
) -> Vec<u32> {
    let mut out = Vec::with_capacity(tail.len());
    Scratch::new(store.item_count()).count_supports(store, pdr, tail, mode, counters, &mut out);
    out
}

/// Projects `parent` onto the transactions containing `y`.
pub fn project_vertical(store: &HdrStore, parent: &Pdr, y: Rank, tail_after: &[Rank]) -> Pdr {
    Scratch::new(store.item_count()).project_vertical(store, parent, y, tail_after)
}

/// Cross-checks horizontal, bitmap and vertical-chain counting against a
/// direct scan of the cell array. Link walks are bounded, so a corrupted
/// store yields `false` rather than looping.
pub fn verify_counts(store: &HdrStore, pdr: &Pdr, tail: &[Rank]) -> bool {
    let n = store.num_txns();
    let items = store.item_count();
    if !pdr.txns.windows(2).all(|w| w[0] < w[1])
        || pdr.txns.iter().any(|&t| t as usize >= n)
        || tail.iter().any(|&y| y as usize >= items)
    {
        return false;
    }

    let mut expected = vec![0u32; tail.len()];
    for &t in &pdr.txns {
        let present: Vec<Rank> = store.raw_items(t as usize).collect();
        for (k, y) in tail.iter().enumerate() {
            if present.contains(y) {
                expected[k] += 1;
            }
        }
    }

    let Some(horizontal) = bounded_horizontal(store, pdr, tail) else {
        return false;
    };
    let bitmap = count_supports(store, pdr, tail, CountMode::Bitmap, &mut CostCounters::default());
    let Some(vertical) = bounded_vertical(store, pdr, tail) else {
        return false;
    };
    horizontal == expected && bitmap == expected && vertical == expected
}

fn bounded_horizontal(store: &HdrStore, pdr: &Pdr, tail: &[Rank]) -> Option<Vec<u32>> {
    let mut counts = vec![0u32; tail.len()];
    for &t in &pdr.txns {
        let t = t as usize;
        let mut steps = 0;
        let mut next = store.txn_first_cell(t);
        while let Some(idx) = next {
            let cell = store.cells.get(idx)?;
            steps += 1;
            if cell.txn() != t || steps > store.txn_len(t) {
                return None;
            }
            if let Some(k) = tail.iter().position(|&y| y == cell.item) {
                counts[k] += 1;
            }
            next = cell.h_next();
        }
        if steps != store.txn_len(t) {
            return None;
        }
    }
    Some(counts)
}

fn bounded_vertical(store: &HdrStore, pdr: &Pdr, tail: &[Rank]) -> Option<Vec<u32>> {
    let mut counts = Vec::with_capacity(tail.len());
    for &y in tail {
        let mut count = 0u32;
        let mut last_txn: Option<usize> = None;
        let mut pos = 0usize;
        let mut next = store.item_first_cell(y);
        while let Some(idx) = next {
            let cell = store.cells.get(idx)?;
            if cell.item != y || last_txn.is_some_and(|l| l >= cell.txn()) {
                return None;
            }
            last_txn = Some(cell.txn());
            while pos < pdr.txns.len() && (pdr.txns[pos] as usize) < cell.txn() {
                pos += 1;
            }
            if pos < pdr.txns.len() && pdr.txns[pos] as usize == cell.txn() {
                count += 1;
            }
            next = cell.v_next();
        }
        counts.push(count);
    }
    Some(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{gen_sparse, prune_and_remap, RawDatabase};
    use crate::test_support::sample;
    use proptest::prelude::*;

    fn store_of(txns: Vec<Vec<u32>>) -> HdrStore {
        let (db, _) = prune_and_remap(&RawDatabase::from_transactions(txns), 1).unwrap();
        HdrStore::build(&db)
    }

    fn v_txns(store: &HdrStore, item: Rank) -> Vec<usize> {
        store.v_chain(item).map(Cell::txn).collect()
    }

    #[test]
    fn sample_links() {
        let (db, _) = sample(2);
        let store = HdrStore::build(&db);
        // a occurs in transactions 01, 03, 05 (1-based).
        assert_eq!(v_txns(&store, 0), vec![0, 2, 4]);
        let mid = store.cells().iter().position(|c| c.item() == 0 && c.txn() == 2).unwrap();
        let cell = store.cell(mid);
        assert_eq!(store.cell(cell.v_prev().unwrap()).txn(), 0);
        assert_eq!(store.cell(cell.v_next().unwrap()).txn(), 4);
        assert_eq!(v_txns(&store, 2), vec![1, 2, 3, 4]);
        assert!(store.txn_contains(3, 1) && !store.txn_contains(3, 0));
        assert!(verify_counts(&store, &Pdr::root(&store), &[0, 1, 2]));
    }

    #[test]
    fn single_transaction_chain() {
        let store = store_of(vec![vec![1, 2, 3]]);
        let items: Vec<_> = store.h_chain(0).map(Cell::item).collect();
        assert_eq!(items, vec![0, 1, 2]);
        let back = store.cell(2).h_prev().map(|i| store.cell(i).item());
        assert_eq!(back, Some(1));
        for item in 0..3 {
            assert_eq!(v_txns(&store, item), vec![0]);
        }
    }

    #[test]
    fn repeated_singletons() {
        let store = store_of(vec![vec![1], vec![1]]);
        assert_eq!(v_txns(&store, 0), vec![0, 1]);
        for t in 0..2 {
            assert_eq!(store.h_chain(t).count(), 1);
        }
    }

    #[test]
    fn select_mode_boundary() {
        assert_eq!(select_mode(2.2, 5), CountMode::Horizontal);
        assert_eq!(select_mode(3.0, 6), CountMode::Bitmap);
        assert_eq!(select_mode(0.0, 4), CountMode::Horizontal);
        assert_eq!(select_mode(0.0, 0), CountMode::Bitmap);
    }

    #[test]
    fn root_counting_costs() {
        let (db, _) = sample(1);
        let store = HdrStore::build(&db);
        let root = Pdr::root(&store);
        let tail = [0, 1, 2, 3, 4];
        assert!((root.atl() - 2.2).abs() < 1e-12);
        assert_eq!(CountMode::Auto.resolve(&root, 5), CountMode::Horizontal);

        let mut c = CostCounters::default();
        let h = count_supports(&store, &root, &tail, CountMode::Horizontal, &mut c);
        assert_eq!(h, vec![3, 2, 4, 1, 1]);
        assert_eq!(c, CostCounters { cells_touched: 11, bit_tests: 0 });

        let mut c = CostCounters::default();
        let b = count_supports(&store, &root, &tail, CountMode::Bitmap, &mut c);
        assert_eq!(b, vec![3, 2, 4, 1, 1]);
        assert_eq!(c, CostCounters { cells_touched: 0, bit_tests: 25 });
    }

    #[test]
    fn projection_walkthrough() {
        let (db, _) = sample(2);
        let store = HdrStore::build(&db);
        let root = Pdr::root(&store);
        let a = project_vertical(&store, &root, 0, &[1, 2]);
        assert_eq!(a.txns(), &[0, 2, 4]);
        // Cells of b or c inside {ab, ac, ac}.
        assert_eq!(a.restricted_length_sum(), 3);
        let sup = count_supports(&store, &a, &[1, 2], CountMode::Auto, &mut CostCounters::default());
        assert_eq!(sup, vec![1, 2]);
        let ac = project_vertical(&store, &a, 2, &[]);
        assert_eq!(ac.txns(), &[2, 4]);
        assert_eq!(ac.restricted_length_sum(), 0);
        assert_eq!(a.txns(), &[0, 2, 4]);
    }

    #[test]
    fn projection_on_absent_item_is_empty() {
        let store = store_of(vec![vec![1, 2], vec![3], vec![1, 3], vec![2]]);
        let root = Pdr::root(&store);
        let b = project_vertical(&store, &root, 1, &[2]);
        assert_eq!(b.txns(), &[0, 3]);
        let bc = project_vertical(&store, &b, 2, &[]);
        assert!(bc.is_empty());
        assert_eq!(bc.atl(), 0.0);
    }

    #[test]
    fn corrupted_vertical_link_is_detected() {
        let (db, _) = sample(2);
        let mut store = HdrStore::build(&db);
        let root = Pdr::root(&store);
        assert!(verify_counts(&store, &root, &[0, 1, 2]));
        // Make a's first cell skip transaction 2 and jump to the last one.
        let first = store.item_first_cell(0).unwrap();
        let last = store.v_chain(0).last().map(|c| c.txn()).unwrap();
        let last_idx = store.cells().iter().position(|c| c.item() == 0 && c.txn() == last).unwrap();
        store.cells[first].v_next = last_idx as u32;
        assert!(!verify_counts(&store, &root, &[0, 1, 2]));
    }

    #[test]
    fn cyclic_links_do_not_hang() {
        let (db, _) = sample(2);
        let mut store = HdrStore::build(&db);
        let root = Pdr::root(&store);
        let first = store.item_first_cell(2).unwrap();
        store.cells[first].v_next = first as u32;
        assert!(!verify_counts(&store, &root, &[2]));

        let mut store = HdrStore::build(&db);
        store.cells[0].h_next = 0;
        assert!(!verify_counts(&store, &root, &[0]));
    }

    fn small_db() -> impl Strategy<Value = (u64, usize, usize)> {
        (any::<u64>(), 1usize..60, 2usize..14)
    }

    proptest! {
        #[test]
        fn modes_agree_and_costs_bounded((seed, n, items) in small_db(), pick in any::<u64>()) {
            let raw = gen_sparse(n, items, 2.min(items), seed).unwrap();
            let (db, _) = prune_and_remap(&raw, 1).unwrap();
            let store = HdrStore::build(&db);
            let root = Pdr::root(&store);
            prop_assert!(verify_counts(&store, &root, &(0..store.item_count() as u32).collect::<Vec<_>>()));
            if store.item_count() < 2 {
                return Ok(());
            }
            // A random head item and the items after it form a node.
            let y = (pick % store.item_count() as u64) as Rank;
            let tail: Vec<Rank> = (0..store.item_count() as Rank).filter(|&i| i != y).collect();
            let node = project_vertical(&store, &root, y, &tail);
            prop_assert!(node.txns().iter().all(|t| root.txns().contains(t)));
            prop_assert_eq!(node.len() as u32, store.item_support(y));
            prop_assert!(verify_counts(&store, &node, &tail));

            let mut hc = CostCounters::default();
            let h = count_supports(&store, &node, &tail, CountMode::Horizontal, &mut hc);
            let mut bc = CostCounters::default();
            let b = count_supports(&store, &node, &tail, CountMode::Bitmap, &mut bc);
            prop_assert_eq!(&h, &b);
            let full_len: usize = node.txns().iter().map(|&t| store.txn_len(t as usize)).sum();
            prop_assert!(hc.cells_touched <= full_len as u64);
            prop_assert_eq!(hc.cells_touched, node.restricted_length_sum());
            prop_assert_eq!(bc.bit_tests, (node.len() * tail.len()) as u64);

            // Second-level projection: support identity and containment.
            if let Some((k, &z)) = tail.iter().enumerate().find(|(_, &z)| z > y) {
                let rest: Vec<Rank> = tail[k + 1..].to_vec();
                let child = project_vertical(&store, &node, z, &rest);
                prop_assert_eq!(child.len() as u32, h[k]);
                prop_assert!(child.txns().iter().all(|t| node.txns().binary_search(t).is_ok()));
                prop_assert!(verify_counts(&store, &child, &rest));
            }
        }
    }
}
