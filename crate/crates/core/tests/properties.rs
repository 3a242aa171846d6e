use std::collections::BTreeSet;

use proptest::prelude::*;

use hybridminer::dataset::{global_supports, parse_fimi_str, prune_and_remap, RawDatabase};
use hybridminer::hdr::{count_supports, project_vertical, verify_counts, CostCounters, CountMode, HdrStore, Pdr};
use hybridminer::miner::{mine, mine_mfi, pep_trim, MinerConfig};
use hybridminer::oracle::{enumerate_fi_bruteforce, maximal_filter, mine_bitmap_baseline};

fn raw_db(max_items: u32, max_txns: usize) -> impl Strategy<Value = RawDatabase> {
    prop::collection::vec(prop::collection::vec(0..max_items, 0..8), 0..max_txns)
        .prop_map(RawDatabase::from_transactions)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pruned_items_are_frequent(raw in raw_db(30, 60), minsup in 1u32..6) {
        let (db, map) = prune_and_remap(&raw, minsup).unwrap();
        let mut support = vec![0u32; db.item_count()];
        for t in db.transactions() {
            prop_assert!(!t.is_empty());
            prop_assert!(t.windows(2).all(|w| w[0] < w[1]));
            for &r in t {
                support[r as usize] += 1;
            }
        }
        prop_assert!(support.iter().all(|&s| s >= minsup));
        // Ranks follow label order.
        for r in 1..map.item_count() as u32 {
            prop_assert!(map.label_of(r - 1) < map.label_of(r));
        }
    }

    #[test]
    fn fimi_round_trip(raw in raw_db(1000, 40)) {
        let nonempty = RawDatabase::from_transactions(
            raw.transactions().iter().filter(|t| !t.is_empty()).cloned().collect(),
        );
        prop_assert_eq!(parse_fimi_str(&nonempty.to_fimi_string()).unwrap(), nonempty);
    }

    #[test]
    fn support_total_equals_cell_total(raw in raw_db(50, 60)) {
        let total: u32 = global_supports(&raw).values().sum();
        let cells: usize = raw.transactions().iter().map(Vec::len).sum();
        prop_assert_eq!(total as usize, cells);
    }

    #[test]
    fn miners_agree_with_bruteforce(raw in raw_db(14, 40), minsup in 1u32..4) {
        let (db, _) = prune_and_remap(&raw, minsup).unwrap();
        let fi = enumerate_fi_bruteforce(&db, minsup).unwrap();
        let expected = maximal_filter(&fi);
        let store = HdrStore::build(&db);
        let hybrid = mine_mfi(&store, &MinerConfig::new(minsup));
        prop_assert!(hybrid.is_antichain());
        prop_assert_eq!(hybrid.to_sorted_vec(), expected.to_sorted_vec());
        prop_assert_eq!(mine_bitmap_baseline(&db, minsup).to_sorted_vec(), expected.to_sorted_vec());

        // Every frequent itemset lies under some maximal one.
        let mfis: Vec<BTreeSet<u32>> = hybrid.iter().map(|(s, _)| s.iter().copied().collect()).collect();
        for (set, _) in &fi.itemsets {
            prop_assert!(mfis.iter().any(|m| set.iter().all(|i| m.contains(i))));
        }
    }

    #[test]
    fn local_views_match_global_checks(raw in raw_db(20, 80), minsup in 1u32..4, mask in 0u8..16) {
        let (db, _) = prune_and_remap(&raw, minsup).unwrap();
        let store = HdrStore::build(&db);
        let mut with = MinerConfig::new(minsup).with_toggles(mask);
        with.use_lmfi = true;
        let mut without = with.clone();
        without.use_lmfi = false;
        prop_assert_eq!(
            mine_mfi(&store, &with).to_sorted_vec(),
            mine_mfi(&store, &without).to_sorted_vec()
        );
    }

    #[test]
    fn equal_support_items_cover_the_projection(raw in raw_db(12, 50), pick in any::<prop::sample::Index>()) {
        let (db, _) = prune_and_remap(&raw, 1).unwrap();
        prop_assume!(db.item_count() >= 2);
        let store = HdrStore::build(&db);
        let y = pick.index(db.item_count()) as u32;
        let tail: Vec<u32> = (y + 1..db.item_count() as u32).collect();
        let node = project_vertical(&store, &Pdr::root(&store), y, &tail);
        prop_assert!(verify_counts(&store, &node, &tail));
        let sup = count_supports(&store, &node, &tail, CountMode::Auto, &mut CostCounters::default());
        let (head, rest, _) = pep_trim(&[y], node.len() as u32, &tail, &sup);
        for moved in &head[1..] {
            prop_assert!(node.txns().iter().all(|&t| store.txn_contains(t as usize, *moved)));
        }
        prop_assert_eq!(head.len() - 1 + rest.len(), tail.len());
    }
}

#[test]
fn deep_tail_does_not_overflow_the_stack() {
    // One long transaction repeated: a single MFI with 3000 items, and a
    // variant without PEP that has to descend the whole chain.
    let txn: Vec<u32> = (0..3000).collect();
    let raw = RawDatabase::from_transactions(vec![txn.clone(), txn]);
    let (db, _) = prune_and_remap(&raw, 2).unwrap();
    let store = HdrStore::build(&db);
    let mut config = MinerConfig::new(2);
    config.enable_pep = false;
    config.enable_hutmfi = false;
    config.enable_fhut = true;
    let (mfi, stats) = mine(&store, &config);
    assert_eq!(mfi.len(), 1);
    assert_eq!(mfi.get(0).0.len(), 3000);
    assert_eq!(stats.nodes_explored, 3001);
}

#[test]
fn concurrent_runs_share_one_store() {
    let raw = hybridminer::dataset::gen_sparse(3000, 80, 6, 21).unwrap();
    let (db, _) = prune_and_remap(&raw, 15).unwrap();
    let store = HdrStore::build(&db);
    let reference = mine_mfi(&store, &MinerConfig::new(15)).to_sorted_vec();
    std::thread::scope(|scope| {
        let handles: Vec<_> = CountMode::ALL
            .into_iter()
            .map(|mode| {
                let store = &store;
                scope.spawn(move || mine_mfi(store, &MinerConfig::new(15).with_mode(mode)).to_sorted_vec())
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), reference);
        }
    });
}
