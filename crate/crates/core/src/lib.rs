//! Maximal frequent itemset mining over a hybrid transaction layout.
//!
//! Transactions are stored once as a flat array of cells. Each cell is
//! linked horizontally to its neighbours in the same transaction and
//! vertically to the next/previous occurrence of the same item, and every
//! transaction also carries a bitmap over the item universe. The miner walks
//! a set-enumeration tree depth first; at each node it counts tail supports
//! either by walking horizontal links (cheap when projected transactions are
//! short relative to the tail) or by probing bitmaps (cheap once the
//! projection has become dense).
//!
//! ```
//! use hybridminer::{dataset, hdr::HdrStore, miner::{mine_mfi, MinerConfig}};
//!
//! let raw = dataset::parse_fimi_str("1 2 4\n3\n1 3 5\n2 3\n1 3\n").unwrap();
//! let (db, map) = dataset::prune_and_remap(&raw, 2).unwrap();
//! let store = HdrStore::build(&db);
//! let mfi = mine_mfi(&store, &MinerConfig::new(2));
//! let mut found: Vec<_> = mfi
//!     .iter()
//!     .map(|(items, sup)| (map.labels_of(items), sup))
//!     .collect();
//! found.sort();
//! assert_eq!(found, vec![(vec![1, 3], 2), (vec![2], 2)]);
//! ```
//!
//! Module map:
//!
//! - [`dataset`]: FIMI parsing, support counting, pruning/remapping, synthetic data.
//! - [`hdr`]: the cell store, projected transaction lists and support counting.
//! - [`miner`]: the depth-first maximal miner and the MFI store.
//! - [`oracle`]: brute-force enumeration and a plain vertical-bitmap miner.
//! - [`cli`]: the `hybridminer` command-line front end.

pub mod bitset;
pub mod cli;
pub mod dataset;
pub mod hdr;
pub mod miner;
pub mod oracle;

pub use dataset::{ItemMap, RawDatabase, TransactionDatabase};
pub use hdr::{CostCounters, CountMode, HdrStore, Pdr};
pub use miner::{mine_mfi, MfiStore, MinerConfig};

/// Dense item identifier after pruning and remapping.
pub type Rank = u32;
