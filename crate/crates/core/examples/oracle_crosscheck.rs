//! Mines many small random databases three ways (hybrid miner, vertical
//! bitmap baseline, brute-force enumeration) and checks they agree.
//!
//! cargo run --release -p hybridminer --example oracle_crosscheck -- 500

use hybridminer::dataset::{gen_sparse, prune_and_remap};
use hybridminer::hdr::HdrStore;
use hybridminer::miner::{mine_mfi, MinerConfig};
use hybridminer::oracle::{enumerate_fi_bruteforce, maximal_filter, mine_bitmap_baseline};

fn main() {
    let rounds: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let mut mfis = 0;
    for seed in 0..rounds {
        let items = 4 + seed as usize % 17;
        let raw = gen_sparse(20 + seed as usize % 80, items, 1 + seed as usize % items.min(5), seed).unwrap();
        let minsup = 1 + (seed % 4) as u32;
        let (db, _) = prune_and_remap(&raw, minsup).unwrap();

        let expected = maximal_filter(&enumerate_fi_bruteforce(&db, minsup).unwrap()).to_sorted_vec();
        let hybrid = mine_mfi(&HdrStore::build(&db), &MinerConfig::new(minsup)).to_sorted_vec();
        let baseline = mine_bitmap_baseline(&db, minsup).to_sorted_vec();
        assert_eq!(hybrid, expected, "seed {seed}: hybrid disagrees");
        assert_eq!(baseline, expected, "seed {seed}: baseline disagrees");
        mfis += expected.len();
    }
    println!("{rounds} databases, {mfis} maximal itemsets, all three miners agree");
}
