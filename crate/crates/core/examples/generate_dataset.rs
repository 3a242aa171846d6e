//! Generates a sparse FIMI dataset and prints its summary.
//!
//! cargo run -p hybridminer --example generate_dataset -- out.dat 100000 1000 10 42

use std::fs::File;
use std::io::BufWriter;

use hybridminer::cli::DatasetStats;
use hybridminer::dataset::SparseSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_owned());
    let path = arg(0, "sparse.dat");
    let spec = SparseSpec::new(
        arg(1, "10000").parse()?,
        arg(2, "500").parse()?,
        arg(3, "8").parse()?,
        arg(4, "1").parse()?,
    );
    let raw = spec.generate()?;
    raw.write_fimi(BufWriter::new(File::create(&path)?))?;
    println!("wrote {path}");
    print!("{}", DatasetStats::of(&raw).render());
    Ok(())
}
