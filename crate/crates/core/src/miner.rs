//! Depth-first maximal frequent itemset search over an [`HdrStore`].
//!
//! Each search node has a head (the candidate itemset), a tail (items that
//! may still extend it) and a projected database. At a node the miner:
//!
//! 1. skips the node if head ∪ tail is already covered by a known maximal
//!    itemset (HUTMFI);
//! 2. counts tail supports over the projection, horizontally or by bitmap;
//! 3. drops infrequent tail items, moves items with the head's own support
//!    into the head (parent equivalence pruning) and sorts the remaining
//!    tail by increasing support;
//! 4. expands children left to right. When the leftmost child proves its
//!    whole head ∪ tail frequent (FHUT), the remaining siblings are covered
//!    and skipped;
//! 5. records the head as maximal if the node is a leaf and no known
//!    maximal itemset contains it.
//!
//! The tree is walked with an explicit stack, so tail length does not bound
//! recursion depth. Superset checks go through a per-node view (LMFI) of
//! the maximal itemsets that contain the current head.

use crate::bitset::Bitset;
use crate::hdr::{CostCounters, CountMode, HdrStore, Pdr, Scratch};
use crate::Rank;

/// Antichain of maximal frequent itemsets with their supports.
#[derive(Debug, Clone, Default)]
pub struct MfiStore {
    item_count: usize,
    itemsets: Vec<Vec<Rank>>,
    supports: Vec<u32>,
    bits: Vec<Bitset>,
    by_item: Vec<Vec<u32>>,
}

impl MfiStore {
    pub fn new(item_count: usize) -> Self {
        MfiStore {
            item_count,
            by_item: vec![Vec::new(); item_count],
            ..Default::default()
        }
    }

    pub fn len(&self) -> usize {
        self.itemsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.itemsets.is_empty()
    }

    pub fn item_count(&self) -> usize {
        self.item_count
    }

    /// Itemset `id` (ascending ranks) and its support.
    pub fn get(&self, id: usize) -> (&[Rank], u32) {
        (&self.itemsets[id], self.supports[id])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Rank], u32)> + '_ {
        self.itemsets
            .iter()
            .zip(&self.supports)
            .map(|(s, &sup)| (s.as_slice(), sup))
    }

    /// All itemsets with supports, sorted lexicographically by rank.
    pub fn to_sorted_vec(&self) -> Vec<(Vec<Rank>, u32)> {
        let mut v: Vec<_> = self.iter().map(|(s, sup)| (s.to_vec(), sup)).collect();
        v.sort();
        v
    }

    /// True when some stored itemset contains every item of `query`.
    pub fn contains_superset(&self, query: &[Rank]) -> bool {
        let Some(&pivot) = query
            .iter()
            .min_by_key(|&&q| self.by_item[q as usize].len())
        else {
            return !self.is_empty();
        };
        self.by_item[pivot as usize]
            .iter()
            .any(|&id| query.iter().all(|&q| self.bits[id as usize].contains(q as usize)))
    }

    /// Inserts `itemset` unless a stored itemset already contains it.
    /// The empty itemset is never stored.
    pub fn maximality_insert(&mut self, itemset: &[Rank], support: u32) -> bool {
        if itemset.is_empty() || self.contains_superset(itemset) {
            return false;
        }
        self.push(itemset, support);
        true
    }

    /// Appends without a superset check; returns the new id.
    pub(crate) fn push(&mut self, itemset: &[Rank], support: u32) -> u32 {
        let mut sorted = itemset.to_vec();
        sorted.sort_unstable();
        debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]), "duplicate items");
        debug_assert!(
            !self.has_proper_subset_of(&sorted),
            "{sorted:?} would swallow an earlier maximal itemset"
        );
        let id = self.itemsets.len() as u32;
        for &item in &sorted {
            self.by_item[item as usize].push(id);
        }
        self.bits.push(Bitset::from_indices(
            self.item_count,
            sorted.iter().map(|&i| i as usize),
        ));
        self.itemsets.push(sorted);
        self.supports.push(support);
        id
    }

    fn has_proper_subset_of(&self, sorted: &[Rank]) -> bool {
        let mut hits = vec![0usize; self.itemsets.len()];
        for &item in sorted {
            for &id in &self.by_item[item as usize] {
                hits[id as usize] += 1;
                if hits[id as usize] == self.itemsets[id as usize].len() {
                    return true;
                }
            }
        }
        false
    }

    /// No stored itemset is a subset of another.
    pub fn is_antichain(&self) -> bool {
        self.itemsets.iter().enumerate().all(|(i, s)| {
            let Some(&pivot) = s.iter().min_by_key(|&&q| self.by_item[q as usize].len()) else {
                return false;
            };
            self.by_item[pivot as usize].iter().all(|&j| {
                j as usize == i || !s.iter().all(|&q| self.bits[j as usize].contains(q as usize))
            })
        })
    }

    /// All stored itemsets containing `y`.
    pub fn view_containing(&self, y: Rank) -> MfiView {
        MfiView {
            ids: self.by_item[y as usize].clone(),
        }
    }

    /// View over every stored itemset.
    pub fn full_view(&self) -> MfiView {
        MfiView {
            ids: (0..self.len() as u32).collect(),
        }
    }
}

/// Node-local subset of an [`MfiStore`]: the stored itemsets that contain
/// the node's head.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MfiView {
    ids: Vec<u32>,
}

impl MfiView {
    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Narrows the view to members that also contain `y`.
    pub fn project(&self, mfi: &MfiStore, y: Rank) -> MfiView {
        MfiView {
            ids: self
                .ids
                .iter()
                .copied()
                .filter(|&id| mfi.bits[id as usize].contains(y as usize))
                .collect(),
        }
    }

    /// True when some member contains every item of `query`.
    pub fn contains_superset(&self, mfi: &MfiStore, query: &[Rank]) -> bool {
        self.ids
            .iter()
            .any(|&id| query.iter().all(|&q| mfi.bits[id as usize].contains(q as usize)))
    }

    fn push(&mut self, id: u32) {
        self.ids.push(id);
    }
}

/// Stored itemsets containing `y`, as a view usable below the branch on `y`.
pub fn lmfi_project(mfi: &MfiStore, y: Rank) -> MfiView {
    mfi.view_containing(y)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinerConfig {
    pub minsup: u32,
    pub mode: CountMode,
    pub enable_pep: bool,
    pub enable_fhut: bool,
    pub enable_hutmfi: bool,
    pub enable_reorder: bool,
    /// Check maximality against node-local views instead of the whole store.
    pub use_lmfi: bool,
}

impl MinerConfig {
    pub fn new(minsup: u32) -> Self {
        assert!(minsup >= 1, "minimum support must be at least 1");
        MinerConfig {
            minsup,
            mode: CountMode::Auto,
            enable_pep: true,
            enable_fhut: true,
            enable_hutmfi: true,
            enable_reorder: true,
            use_lmfi: true,
        }
    }

    pub fn with_mode(mut self, mode: CountMode) -> Self {
        self.mode = mode;
        self
    }

    /// Sets the four pruning/reordering switches from the low bits of
    /// `mask`: PEP, FHUT, HUTMFI, reorder.
    pub fn with_toggles(mut self, mask: u8) -> Self {
        self.enable_pep = mask & 1 != 0;
        self.enable_fhut = mask & 2 != 0;
        self.enable_hutmfi = mask & 4 != 0;
        self.enable_reorder = mask & 8 != 0;
        self
    }
}

/// Instrumentation from one mining run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MiningStats {
    /// Nodes that got past the HUTMFI check.
    pub nodes_explored: u64,
    pub counters: CostCounters,
    /// Cost of the root node's counting call alone.
    pub root_counters: CostCounters,
    pub horizontal_calls: u64,
    pub bitmap_calls: u64,
}

/// One search-tree state on the explicit DFS stack.
#[derive(Debug, Clone)]
pub struct NodeFrame {
    head: Vec<Rank>,
    head_support: u32,
    tail: Vec<Rank>,
    tail_supports: Vec<u32>,
    pdr: Pdr,
    is_hut: bool,
    all_frequent: bool,
    next_child: usize,
    first_child_hut: bool,
    stop: bool,
    view: MfiView,
}

impl NodeFrame {
    pub fn new(head: Vec<Rank>, head_support: u32, tail: Vec<Rank>, pdr: Pdr, is_hut: bool) -> Self {
        NodeFrame {
            head,
            head_support,
            tail_supports: Vec::new(),
            tail,
            pdr,
            is_hut,
            all_frequent: false,
            next_child: 0,
            first_child_hut: false,
            stop: false,
            view: MfiView::default(),
        }
    }

    pub fn head(&self) -> &[Rank] {
        &self.head
    }

    pub fn head_support(&self) -> u32 {
        self.head_support
    }

    pub fn tail(&self) -> &[Rank] {
        &self.tail
    }

    pub fn pdr(&self) -> &Pdr {
        &self.pdr
    }

    pub fn is_hut(&self) -> bool {
        self.is_hut
    }
}

/// Moves every tail item whose support equals the head's into the head.
/// The remaining tail keeps its order. Returns the new head, tail and the
/// remaining tail's supports.
pub fn pep_trim(
    head: &[Rank],
    head_support: u32,
    tail: &[Rank],
    tail_supports: &[u32],
) -> (Vec<Rank>, Vec<Rank>, Vec<u32>) {
    let mut new_head = head.to_vec();
    let mut new_tail = Vec::with_capacity(tail.len());
    let mut new_supports = Vec::with_capacity(tail.len());
    for (&y, &s) in tail.iter().zip(tail_supports) {
        if s == head_support {
            new_head.push(y);
        } else {
            new_tail.push(y);
            new_supports.push(s);
        }
    }
    (new_head, new_tail, new_supports)
}

/// Sorts the tail by ascending support, ties by ascending rank.
pub fn reorder_tail(tail: &[Rank], tail_supports: &[u32]) -> Vec<Rank> {
    let mut pairs: Vec<(Rank, u32)> = tail.iter().copied().zip(tail_supports.iter().copied()).collect();
    sort_by_support(&mut pairs);
    pairs.into_iter().map(|(y, _)| y).collect()
}

fn sort_by_support(pairs: &mut [(Rank, u32)]) {
    pairs.sort_by_key(|&(y, s)| (s, y));
}

/// True when head ∪ tail is contained in a known maximal itemset, in which
/// case the whole node is skipped.
pub fn hut_prune_check(head: &[Rank], tail: &[Rank], mfi: &MfiStore) -> bool {
    let mut hut = Vec::with_capacity(head.len() + tail.len());
    hut.extend_from_slice(head);
    hut.extend_from_slice(tail);
    mfi.contains_superset(&hut)
}

/// Whether `node`, having finished, lets its parent abandon the remaining
/// siblings. `all_tail_frequent` must mean the node's whole head ∪ tail was
/// shown frequent, not merely each single extension.
pub fn fhut_signal(node: &NodeFrame, all_tail_frequent: bool) -> bool {
    node.is_hut && all_tail_frequent
}

/// Mines the maximal frequent itemsets of `store` at `config.minsup`.
pub fn mine_mfi(store: &HdrStore, config: &MinerConfig) -> MfiStore {
    mine(store, config).0
}

/// Like [`mine_mfi`], also returning instrumentation.
pub fn mine(store: &HdrStore, config: &MinerConfig) -> (MfiStore, MiningStats) {
    let mut miner = Miner {
        store,
        config,
        scratch: Scratch::new(store.item_count()),
        counts: Vec::new(),
        mfi: MfiStore::new(store.item_count()),
        stats: MiningStats::default(),
        stack: Vec::new(),
    };
    miner.run();
    (miner.mfi, miner.stats)
}

enum Visit {
    /// The node finished without becoming a frame; carries whether its
    /// head ∪ tail is known frequent.
    Done(bool),
    Expand(NodeFrame),
}

struct Miner<'a> {
    store: &'a HdrStore,
    config: &'a MinerConfig,
    scratch: Scratch,
    counts: Vec<u32>,
    mfi: MfiStore,
    stats: MiningStats,
    stack: Vec<NodeFrame>,
}

impl Miner<'_> {
    fn run(&mut self) {
        let n = self.store.num_txns() as u32;
        if n < self.config.minsup || self.store.item_count() == 0 {
            return;
        }
        let tail: Vec<Rank> = (0..self.store.item_count() as Rank).collect();
        let root = Pdr::root(self.store);
        match self.visit(Vec::new(), n, tail, root, false, MfiView::default(), true) {
            Visit::Done(_) => return,
            Visit::Expand(frame) => self.stack.push(frame),
        }

        while let Some(top) = self.stack.last_mut() {
            if top.stop || top.next_child >= top.tail.len() {
                let done = self.stack.pop().expect("non-empty");
                let hut_frequent = done.all_frequent && done.first_child_hut;
                self.deliver(done.is_hut, hut_frequent);
                continue;
            }
            let i = top.next_child;
            top.next_child += 1;
            let x = top.tail[i];
            let child_tail = top.tail[i + 1..].to_vec();
            let child_support = top.tail_supports[i];
            let mut child_head = Vec::with_capacity(top.head.len() + 1);
            child_head.extend_from_slice(&top.head);
            child_head.push(x);

            let child_view = if self.config.use_lmfi {
                top.view.project(&self.mfi, x)
            } else {
                MfiView::default()
            };
            if self.config.enable_hutmfi {
                let covered = if self.config.use_lmfi {
                    // Every member of the view already contains the head.
                    child_view.contains_superset(&self.mfi, &child_tail)
                } else {
                    hut_prune_check(&child_head, &child_tail, &self.mfi)
                };
                if covered {
                    self.deliver(i == 0, true);
                    continue;
                }
            }
            let pdr = {
                let top = self.stack.last().expect("non-empty");
                self.scratch.project_vertical(self.store, &top.pdr, x, &child_tail)
            };
            match self.visit(child_head, child_support, child_tail, pdr, i == 0, child_view, false) {
                Visit::Done(hut_frequent) => self.deliver(i == 0, hut_frequent),
                Visit::Expand(frame) => self.stack.push(frame),
            }
        }
    }

    /// Hands a finished child's result to the frame on top of the stack.
    fn deliver(&mut self, child_is_hut: bool, hut_frequent: bool) {
        let fhut = self.config.enable_fhut;
        let Some(parent) = self.stack.last_mut() else {
            return;
        };
        if child_is_hut {
            parent.first_child_hut = hut_frequent;
            if fhut && hut_frequent {
                parent.stop = true;
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn visit(
        &mut self,
        head: Vec<Rank>,
        head_support: u32,
        tail: Vec<Rank>,
        pdr: Pdr,
        is_hut: bool,
        mut view: MfiView,
        is_root: bool,
    ) -> Visit {
        let cfg = self.config;
        self.stats.nodes_explored += 1;

        let mut counters = CostCounters::default();
        if !tail.is_empty() {
            let mode = self.scratch.count_supports(
                self.store,
                &pdr,
                &tail,
                cfg.mode,
                &mut counters,
                &mut self.counts,
            );
            match mode {
                CountMode::Horizontal => self.stats.horizontal_calls += 1,
                _ => self.stats.bitmap_calls += 1,
            }
        } else {
            self.counts.clear();
        }
        self.stats.counters.add(&counters);
        if is_root {
            self.stats.root_counters = counters;
        }

        let all_frequent = self.counts.iter().all(|&s| s >= cfg.minsup);
        let (freq_tail, freq_supports): (Vec<Rank>, Vec<u32>) = tail
            .iter()
            .copied()
            .zip(self.counts.iter().copied())
            .filter(|&(_, s)| s >= cfg.minsup)
            .unzip();

        let (head, mut pairs) = if cfg.enable_pep {
            let (new_head, rest, rest_supports) =
                pep_trim(&head, head_support, &freq_tail, &freq_supports);
            for &moved in &new_head[head.len()..] {
                debug_assert!(
                    pdr.txns().iter().all(|&t| self.store.txn_contains(t as usize, moved)),
                    "equal-support item {moved} missing from a projected transaction"
                );
                if cfg.use_lmfi {
                    view = view.project(&self.mfi, moved);
                }
            }
            (new_head, rest.into_iter().zip(rest_supports).collect::<Vec<_>>())
        } else {
            (head, freq_tail.into_iter().zip(freq_supports).collect())
        };
        if cfg.enable_reorder {
            sort_by_support(&mut pairs);
        }

        if pairs.is_empty() {
            self.record_leaf(&head, head_support, &view);
            return Visit::Done(all_frequent);
        }

        let (tail, tail_supports) = pairs.into_iter().unzip();
        Visit::Expand(NodeFrame {
            head,
            head_support,
            tail,
            tail_supports,
            pdr,
            is_hut,
            all_frequent,
            next_child: 0,
            first_child_hut: false,
            stop: false,
            view,
        })
    }

    fn record_leaf(&mut self, head: &[Rank], support: u32, view: &MfiView) {
        if head.is_empty() {
            return;
        }
        if self.config.use_lmfi {
            if view.contains_superset(&self.mfi, head) {
                return;
            }
            let id = self.mfi.push(head, support);
            // The new itemset contains the head of every open frame.
            for frame in &mut self.stack {
                frame.view.push(id);
            }
        } else {
            self.mfi.maximality_insert(head, support);
        }
    }
}
