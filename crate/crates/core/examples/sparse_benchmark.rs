//! Times the hybrid miner against the vertical-bitmap baseline on a
//! generated analog of a 100k-transaction, 1000-item sparse dataset over a
//! descending support grid, printing CSV.
//!
//! cargo run --release -p hybridminer --example sparse_benchmark

use std::time::Instant;

use hybridminer::dataset::{gen_sparse, prune_and_remap};
use hybridminer::hdr::HdrStore;
use hybridminer::miner::{mine, MinerConfig};
use hybridminer::oracle::mine_bitmap_baseline;

fn main() {
    let raw = gen_sparse(100_000, 1_000, 10, 10).unwrap();
    println!("minsup_rel,minsup_abs,mfi_count,hybrid_ms,bitmap_ms");
    for rel in [0.005, 0.0025, 0.002, 0.0015, 0.001] {
        let minsup = (rel * raw.len() as f64).ceil() as u32;

        let start = Instant::now();
        let (db, _) = prune_and_remap(&raw, minsup).unwrap();
        let (mfi, _) = mine(&HdrStore::build(&db), &MinerConfig::new(minsup));
        let hybrid_ms = start.elapsed().as_millis();

        let start = Instant::now();
        let (db, _) = prune_and_remap(&raw, minsup).unwrap();
        let baseline = mine_bitmap_baseline(&db, minsup);
        let bitmap_ms = start.elapsed().as_millis();

        assert_eq!(mfi.len(), baseline.len());
        println!("{rel},{minsup},{},{hybrid_ms},{bitmap_ms}", mfi.len());
    }
}
