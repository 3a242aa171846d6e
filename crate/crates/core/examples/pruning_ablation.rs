//! Runs every combination of the four search switches (PEP, FHUT, HUTMFI,
//! dynamic reordering) on one database and reports the search effort.
//! The result set never changes; only the work does.
//!
//! cargo run --release -p hybridminer --example pruning_ablation

use std::time::Instant;

use hybridminer::dataset::{gen_sparse, prune_and_remap};
use hybridminer::hdr::HdrStore;
use hybridminer::miner::{mine, MinerConfig};

fn main() {
    let raw = gen_sparse(5_000, 120, 8, 17).unwrap();
    let minsup = 25;
    let (db, _) = prune_and_remap(&raw, minsup).unwrap();
    let store = HdrStore::build(&db);

    let reference = mine(&store, &MinerConfig::new(minsup)).0.to_sorted_vec();
    println!("{} MFIs at minsup {minsup}\n", reference.len());
    println!("{:>5} {:>6} {:>7} {:>8} {:>10} {:>12} {:>9}", "pep", "fhut", "hutmfi", "reorder", "nodes", "cells", "ms");
    for mask in (0..16u8).rev() {
        let config = MinerConfig::new(minsup).with_toggles(mask);
        let start = Instant::now();
        let (mfi, stats) = mine(&store, &config);
        let ms = start.elapsed().as_secs_f64() * 1e3;
        assert_eq!(mfi.to_sorted_vec(), reference);
        println!(
            "{:>5} {:>6} {:>7} {:>8} {:>10} {:>12} {:>9.1}",
            config.enable_pep,
            config.enable_fhut,
            config.enable_hutmfi,
            config.enable_reorder,
            stats.nodes_explored,
            stats.counters.cells_touched,
            ms
        );
    }
}
