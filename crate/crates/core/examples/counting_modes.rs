//! Compares the two ways of counting tail supports. At the root of the
//! sample, horizontal counting touches 11 cells where bitmap probing needs
//! 5 x 5 = 25 tests. On a larger sparse database the example then shows
//! how often the automatic choice picks each mode during a full run.
//!
//! cargo run --release -p hybridminer --example counting_modes

use hybridminer::dataset::{gen_sparse, parse_fimi_str, prune_and_remap};
use hybridminer::hdr::{count_supports, select_mode, CostCounters, CountMode, HdrStore, Pdr};
use hybridminer::miner::{mine, MinerConfig};

fn main() {
    let raw = parse_fimi_str("1 2 4\n3\n1 3 5\n2 3\n1 3\n").unwrap();
    let (db, _) = prune_and_remap(&raw, 1).unwrap();
    let store = HdrStore::build(&db);
    let root = Pdr::root(&store);
    let tail: Vec<u32> = (0..5).collect();

    println!("sample root: ATL {:.1}, tail {}", root.atl(), tail.len());
    for mode in [CountMode::Horizontal, CountMode::Bitmap] {
        let mut c = CostCounters::default();
        let sup = count_supports(&store, &root, &tail, mode, &mut c);
        println!("  {mode:>10}: supports {sup:?}, cells {} bit tests {}", c.cells_touched, c.bit_tests);
    }
    println!("  auto picks {}", select_mode(root.atl(), tail.len()));

    let raw = gen_sparse(20_000, 300, 8, 3).unwrap();
    let minsup = 40;
    let (db, _) = prune_and_remap(&raw, minsup).unwrap();
    let store = HdrStore::build(&db);
    println!("\ngenerated: {} transactions, {} frequent items", db.len(), db.item_count());
    for mode in CountMode::ALL {
        let (mfi, stats) = mine(&store, &MinerConfig::new(minsup).with_mode(mode));
        println!(
            "  {mode:>10}: {} MFIs, horizontal calls {}, bitmap calls {}, cells {}, bit tests {}",
            mfi.len(),
            stats.horizontal_calls,
            stats.bitmap_calls,
            stats.counters.cells_touched,
            stats.counters.bit_tests
        );
    }
}
