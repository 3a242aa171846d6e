//! Walks the five-transaction sample (items a..e encoded 1..5) through
//! pruning, the cell store, two levels of projection, and mining.
//!
//! cargo run -p hybridminer --example sample_walkthrough

use hybridminer::dataset::{parse_fimi_str, prune_and_remap};
use hybridminer::hdr::{count_supports, project_vertical, CostCounters, CountMode, HdrStore, Pdr};
use hybridminer::miner::{mine, MinerConfig};

const SAMPLE: &str = "1 2 4\n3\n1 3 5\n2 3\n1 3\n";

fn main() {
    let raw = parse_fimi_str(SAMPLE).expect("sample parses");
    let (db, map) = prune_and_remap(&raw, 2).expect("minsup is positive");
    let name = |rank: u32| (b'a' + map.label_of(rank) as u8 - 1) as char;

    println!("frequent items at minsup 2:");
    for r in 0..map.item_count() as u32 {
        println!("  {} (label {})", name(r), map.label_of(r));
    }

    let store = HdrStore::build(&db);
    println!("\ncells: {}", store.cells().len());
    for t in 0..store.num_txns() {
        let items: String = store.h_chain(t).map(|c| name(c.item())).collect();
        println!("  transaction {:02}: {items}", t + 1);
    }
    for r in 0..store.item_count() as u32 {
        let txns: Vec<String> = store.v_chain(r).map(|c| format!("{:02}", c.txn() + 1)).collect();
        println!("  vertical chain of {}: {}", name(r), txns.join(" -> "));
    }

    let root = Pdr::root(&store);
    let a_tail = [1, 2];
    let node_a = project_vertical(&store, &root, 0, &a_tail);
    let sup = count_supports(&store, &node_a, &a_tail, CountMode::Auto, &mut CostCounters::default());
    println!("\nnode {{a}}: transactions {:?}, tail supports b={} c={}", one_based(node_a.txns()), sup[0], sup[1]);
    let node_ac = project_vertical(&store, &node_a, 2, &[]);
    println!("node {{a,c}}: transactions {:?}", one_based(node_ac.txns()));

    let (mfi, stats) = mine(&store, &MinerConfig::new(2));
    println!("\nmaximal frequent itemsets ({} nodes explored):", stats.nodes_explored);
    for (items, support) in mfi.iter() {
        let names: String = items.iter().map(|&r| name(r)).collect();
        println!("  {{{names}}} support {support}");
    }
}

fn one_based(txns: &[u32]) -> Vec<u32> {
    txns.iter().map(|t| t + 1).collect()
}
