//! Command-line front end.
//!
//! Subcommands: `mine`, `oracle`, `bench`, `stats` and `generate`. Exit
//! codes: 0 success, 2 bad input or arguments, 3 internal invariant breach
//! (including algorithms disagreeing in `bench`), 4 brute-force guard
//! exceeded.
//!
//! Canonical MFI output is one itemset per line: original labels ascending,
//! space separated, then ` (support)`. Lines are sorted lexicographically as
//! integer sequences.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::dataset::{self, ItemMap, RawDatabase, SparseSpec};
use crate::hdr::{CountMode, HdrStore};
use crate::miner::{self, MfiStore, MinerConfig};
use crate::oracle::{self, OracleError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Guard(#[from] OracleError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Guard(_) => 4,
        }
    }
}

impl From<dataset::DatasetError> for CliError {
    fn from(e: dataset::DatasetError) -> Self {
        CliError::Input(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "hybridminer", version, about = "Maximal frequent itemset miner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mine maximal frequent itemsets.
    Mine(MineArgs),
    /// Mine by brute-force enumeration (small item universes only).
    Oracle(OracleArgs),
    /// Time algorithms over datasets and support thresholds, writing CSV.
    Bench(BenchArgs),
    /// Print dataset statistics.
    Stats(StatsArgs),
    /// Write a synthetic sparse dataset in FIMI format.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Hybrid cell-array/bitmap miner.
    Hybrid,
    /// Plain vertical-bitmap miner.
    Bitmap,
    /// Brute-force enumeration plus maximal filtering.
    Oracle,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Hybrid => "hybrid",
            Algorithm::Bitmap => "bitmap",
            Algorithm::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Horizontal,
    Bitmap,
}

impl From<ModeArg> for CountMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => CountMode::Auto,
            ModeArg::Horizontal => CountMode::Horizontal,
            ModeArg::Bitmap => CountMode::Bitmap,
        }
    }
}

#[derive(Debug, Args)]
struct PruningFlags {
    #[arg(long)]
    no_pep: bool,
    #[arg(long)]
    no_fhut: bool,
    #[arg(long)]
    no_hutmfi: bool,
    #[arg(long)]
    no_reorder: bool,
    #[arg(long)]
    no_lmfi: bool,
}

#[derive(Debug, Args)]
struct MineArgs {
    /// FIMI input file.
    input: PathBuf,
    /// Absolute count (e.g. 2) or fraction of transactions (e.g. 0.4).
    #[arg(long)]
    minsup: String,
    #[arg(long, value_enum, default_value = "hybrid")]
    algorithm: Algorithm,
    #[arg(long, value_enum, default_value = "auto")]
    mode: ModeArg,
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Report instrumentation counters on stderr.
    #[arg(long)]
    counters: bool,
    #[command(flatten)]
    pruning: PruningFlags,
}

#[derive(Debug, Args)]
struct OracleArgs {
    input: PathBuf,
    #[arg(long)]
    minsup: String,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// FIMI dataset; repeatable.
    #[arg(long = "input")]
    inputs: Vec<PathBuf>,
    /// Generated dataset `gen:TRANSACTIONS:ITEMS:AVG_LEN:SEED`; repeatable.
    #[arg(long = "generate")]
    generators: Vec<String>,
    /// Comma-separated support grid, absolute or relative.
    #[arg(long, value_delimiter = ',', required = true)]
    minsup: Vec<String>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "hybrid,bitmap")]
    algorithms: Vec<Algorithm>,
    #[arg(long, value_enum, default_value = "auto")]
    mode: ModeArg,
    #[arg(long)]
    csv: PathBuf,
    /// Fill the counter columns.
    #[arg(long)]
    counters: bool,
}

#[derive(Debug, Args)]
struct StatsArgs {
    input: PathBuf,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long)]
    transactions: usize,
    #[arg(long)]
    items: usize,
    #[arg(long)]
    avg_len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = SparseSpec::DEFAULT_SKEW)]
    skew: f64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Support threshold as given on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinsupSpec {
    Absolute(u32),
    /// `numerator / denominator`, in (0, 1].
    Relative { numerator: u64, denominator: u64 },
}

impl MinsupSpec {
    /// Integers are absolute counts; decimals are fractions of the
    /// transaction count.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || CliError::Input(format!("invalid minimum support {s:?}"));
        if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
            let n: u32 = s.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(CliError::Input("minimum support must be positive".into()));
            }
            return Ok(MinsupSpec::Absolute(n));
        }
        let (int, frac) = s.split_once('.').ok_or_else(bad)?;
        if int.is_empty() && frac.is_empty()
            || !int.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
            || frac.len() > 18
        {
            return Err(bad());
        }
        let denominator = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac_val: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let numerator = int
            .checked_mul(denominator)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(bad)?;
        if numerator == 0 || numerator > denominator {
            return Err(CliError::Input(format!(
                "relative minimum support {s} must be in (0, 1]"
            )));
        }
        Ok(MinsupSpec::Relative {
            numerator,
            denominator,
        })
    }

    /// Absolute threshold for a database of `n_txns` transactions; relative
    /// values round up and never go below 1.
    pub fn to_absolute(self, n_txns: usize) -> u32 {
        match self {
            MinsupSpec::Absolute(n) => n,
            MinsupSpec::Relative {
                numerator,
                denominator,
            } => {
                let scaled = numerator as u128 * n_txns as u128;
                let abs = scaled.div_ceil(denominator as u128);
                abs.clamp(1, u32::MAX as u128) as u32
            }
        }
    }
}

/// One benchmark/mining measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub algorithm: String,
    pub dataset: String,
    pub minsup_abs: u32,
    pub minsup_rel: f64,
    pub mfi_count: usize,
    pub wall_time_ms: u128,
    pub cells_touched: Option<u64>,
    pub bit_tests: Option<u64>,
    pub nodes_explored: Option<u64>,
}

pub const CSV_HEADER: [&str; 9] = [
    "dataset",
    "algorithm",
    "minsup_abs",
    "minsup_rel",
    "mfi_count",
    "wall_time_ms",
    "cells_touched",
    "bit_tests",
    "nodes_explored",
];

impl RunReport {
    fn csv_record(&self) -> [String; 9] {
        let opt = |v: Option<u64>| v.map(|v| v.to_string()).unwrap_or_default();
        [
            self.dataset.clone(),
            self.algorithm.clone(),
            self.minsup_abs.to_string(),
            format_decimal(self.minsup_rel, 6),
            self.mfi_count.to_string(),
            self.wall_time_ms.to_string(),
            opt(self.cells_touched),
            opt(self.bit_tests),
            opt(self.nodes_explored),
        ]
    }
}

/// Result of running one algorithm on one database.
#[derive(Debug, Clone)]
pub struct MiningOutcome {
    pub canonical: String,
    pub mfi_count: usize,
    pub wall_time_ms: u128,
    /// Counter name/value pairs in reporting order.
    pub counters: Vec<(&'static str, u64)>,
}

impl MiningOutcome {
    fn counter(&self, name: &str) -> Option<u64> {
        self.counters.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }
}

/// Renders `mfi` with original labels in canonical order.
pub fn render_canonical(mfi: &MfiStore, map: &ItemMap) -> String {
    let mut rows: Vec<(Vec<u32>, u32)> = mfi.iter().map(|(s, sup)| (map.labels_of(s), sup)).collect();
    rows.sort();
    let mut out = String::new();
    for (labels, sup) in rows {
        for (k, l) in labels.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            write!(out, "{l}").expect("writing to a String");
        }
        writeln!(out, " ({sup})").expect("writing to a String");
    }
    out
}

/// Prunes `raw` at `minsup`, mines it with `algorithm` and renders the
/// result. Wall time covers pruning, structure build and mining.
pub fn run_algorithm(
    raw: &RawDatabase,
    minsup: u32,
    algorithm: Algorithm,
    config: &MinerConfig,
) -> Result<MiningOutcome> {
    let start = Instant::now();
    let (db, map) = dataset::prune_and_remap(raw, minsup)?;
    let (mfi, counters) = match algorithm {
        Algorithm::Hybrid => {
            let store = HdrStore::build(&db);
            let config = MinerConfig {
                minsup,
                ..config.clone()
            };
            let (mfi, stats) = miner::mine(&store, &config);
            let counters = vec![
                ("nodes_explored", stats.nodes_explored),
                ("cells_touched", stats.counters.cells_touched),
                ("bit_tests", stats.counters.bit_tests),
                ("root_cells_touched", stats.root_counters.cells_touched),
                ("root_bit_tests", stats.root_counters.bit_tests),
                ("horizontal_calls", stats.horizontal_calls),
                ("bitmap_calls", stats.bitmap_calls),
            ];
            (mfi, counters)
        }
        Algorithm::Bitmap => {
            let (mfi, stats) = oracle::mine_bitmap_baseline_with_stats(&db, minsup);
            let counters = vec![
                ("nodes_explored", stats.nodes_explored),
                ("words_intersected", stats.words_intersected),
            ];
            (mfi, counters)
        }
        Algorithm::Oracle => {
            let fi = oracle::enumerate_fi_bruteforce(&db, minsup)?;
            let mfi = oracle::maximal_filter(&fi);
            (mfi, vec![("frequent_itemsets", fi.len() as u64)])
        }
    };
    let wall_time_ms = start.elapsed().as_millis();
    if !mfi.is_antichain() {
        return Err(CliError::Invariant(format!(
            "{} produced a non-maximal itemset",
            algorithm.name()
        )));
    }
    Ok(MiningOutcome {
        canonical: render_canonical(&mfi, &map),
        mfi_count: mfi.len(),
        wall_time_ms,
        counters,
    })
}

/// Runs the CLI with `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                2
            } else {
                let _ = write!(stdout, "{}", e.render());
                0
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Mine(a) => cmd_mine(a, stdout, stderr),
        Command::Oracle(a) => cmd_oracle(a, stdout),
        Command::Bench(a) => cmd_bench(a, stderr),
        Command::Stats(a) => cmd_stats(a, stdout),
        Command::Generate(a) => cmd_generate(a, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_input(path: &Path) -> Result<RawDatabase> {
    let file = File::open(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    dataset::parse_fimi(BufReader::new(file))
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    let io_err = |e: io::Error| CliError::Input(format!("cannot write output: {e}"));
    match path {
        Some(p) => std::fs::write(p, text).map_err(io_err),
        None => stdout.write_all(text.as_bytes()).map_err(io_err),
    }
}

fn miner_config(mode: ModeArg, flags: &PruningFlags) -> MinerConfig {
    let mut config = MinerConfig::new(1).with_mode(mode.into());
    config.enable_pep = !flags.no_pep;
    config.enable_fhut = !flags.no_fhut;
    config.enable_hutmfi = !flags.no_hutmfi;
    config.enable_reorder = !flags.no_reorder;
    config.use_lmfi = !flags.no_lmfi;
    config
}

fn cmd_mine(args: MineArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let spec = MinsupSpec::parse(&args.minsup)?;
    let raw = read_input(&args.input)?;
    let minsup = spec.to_absolute(raw.len());
    let config = miner_config(args.mode, &args.pruning);
    let outcome = run_algorithm(&raw, minsup, args.algorithm, &config)?;
    write_output(args.output.as_deref(), &outcome.canonical, stdout)?;
    if args.counters {
        let _ = writeln!(stderr, "algorithm={}", args.algorithm.name());
        let _ = writeln!(stderr, "minsup_abs={minsup}");
        let _ = writeln!(stderr, "mfi_count={}", outcome.mfi_count);
        let _ = writeln!(stderr, "wall_time_ms={}", outcome.wall_time_ms);
        for (name, value) in &outcome.counters {
            let _ = writeln!(stderr, "{name}={value}");
        }
    }
    Ok(())
}

fn cmd_oracle(args: OracleArgs, stdout: &mut dyn Write) -> Result<()> {
    let spec = MinsupSpec::parse(&args.minsup)?;
    let raw = read_input(&args.input)?;
    let minsup = spec.to_absolute(raw.len());
    let outcome = run_algorithm(&raw, minsup, Algorithm::Oracle, &MinerConfig::new(minsup))?;
    write_output(args.output.as_deref(), &outcome.canonical, stdout)
}

/// Parses `gen:TRANSACTIONS:ITEMS:AVG_LEN:SEED`.
pub fn parse_generator(spec: &str) -> Result<SparseSpec> {
    let bad = || {
        CliError::Input(format!(
            "invalid generator {spec:?}, expected gen:TRANSACTIONS:ITEMS:AVG_LEN:SEED"
        ))
    };
    let rest = spec.strip_prefix("gen:").ok_or_else(bad)?;
    let parts: Vec<&str> = rest.split(':').collect();
    let [n, items, len, seed] = parts.as_slice() else {
        return Err(bad());
    };
    Ok(SparseSpec::new(
        n.parse().map_err(|_| bad())?,
        items.parse().map_err(|_| bad())?,
        len.parse().map_err(|_| bad())?,
        seed.parse().map_err(|_| bad())?,
    ))
}

fn cmd_bench(args: BenchArgs, stderr: &mut dyn Write) -> Result<()> {
    let grid: Vec<MinsupSpec> = args
        .minsup
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| MinsupSpec::parse(s))
        .collect::<Result<_>>()?;
    if grid.is_empty() {
        return Err(CliError::Input("empty support grid".into()));
    }
    if args.algorithms.is_empty() {
        return Err(CliError::Input("no algorithms selected".into()));
    }
    let mut datasets: Vec<(String, RawDatabase)> = Vec::new();
    for path in &args.inputs {
        datasets.push((path.display().to_string(), read_input(path)?));
    }
    for g in &args.generators {
        datasets.push((g.clone(), parse_generator(g)?.generate()?));
    }
    if datasets.is_empty() {
        return Err(CliError::Input("no datasets given".into()));
    }

    let config = MinerConfig::new(1).with_mode(args.mode.into());
    let mut reports = Vec::new();
    let mut mismatch = None;
    for (name, raw) in &datasets {
        for spec in &grid {
            let minsup = spec.to_absolute(raw.len());
            let minsup_rel = if raw.is_empty() {
                0.0
            } else {
                minsup as f64 / raw.len() as f64
            };
            let mut reference: Option<(Algorithm, String)> = None;
            for &alg in &args.algorithms {
                let outcome = run_algorithm(raw, minsup, alg, &config)?;
                let _ = writeln!(
                    stderr,
                    "{name} {} minsup={minsup}: {} MFIs in {} ms",
                    alg.name(),
                    outcome.mfi_count,
                    outcome.wall_time_ms
                );
                match &reference {
                    None => reference = Some((alg, outcome.canonical.clone())),
                    Some((ref_alg, canonical)) if *canonical != outcome.canonical => {
                        mismatch.get_or_insert(format!(
                            "{name} at minsup {minsup}: {} and {} disagree",
                            ref_alg.name(),
                            alg.name()
                        ));
                    }
                    Some(_) => {}
                }
                let counter = |n| args.counters.then(|| outcome.counter(n)).flatten();
                let (cells, bits) = match alg {
                    Algorithm::Hybrid => (counter("cells_touched"), counter("bit_tests")),
                    _ => (None, None),
                };
                reports.push(RunReport {
                    algorithm: alg.name().to_owned(),
                    dataset: name.clone(),
                    minsup_abs: minsup,
                    minsup_rel,
                    mfi_count: outcome.mfi_count,
                    wall_time_ms: outcome.wall_time_ms,
                    cells_touched: cells,
                    bit_tests: bits,
                    nodes_explored: counter("nodes_explored"),
                });
            }
        }
    }
    write_csv(&args.csv, &reports)?;
    match mismatch {
        Some(m) => Err(CliError::Invariant(m)),
        None => Ok(()),
    }
}

fn write_csv(path: &Path, reports: &[RunReport]) -> Result<()> {
    let csv_err = |e: csv::Error| CliError::Input(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in reports {
        w.write_record(r.csv_record()).map_err(csv_err)?;
    }
    w.flush()
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

/// Dataset summary: item and record counts plus transaction lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetStats {
    pub items: usize,
    pub records: usize,
    pub average_length: f64,
    pub min_length: usize,
    pub max_length: usize,
}

impl DatasetStats {
    pub fn of(raw: &RawDatabase) -> Self {
        let lengths = raw.transactions().iter().map(Vec::len);
        DatasetStats {
            items: raw.label_universe().len(),
            records: raw.len(),
            average_length: dataset::atl(raw.transactions()),
            min_length: lengths.clone().min().unwrap_or(0),
            max_length: lengths.max().unwrap_or(0),
        }
    }

    pub fn render(&self) -> String {
        format!(
            "Items={}\nRecords={}\nAverage Length={}\nMin Length={}\nMax Length={}\n",
            self.items,
            self.records,
            format_decimal(self.average_length, 4),
            self.min_length,
            self.max_length
        )
    }
}

fn cmd_stats(args: StatsArgs, stdout: &mut dyn Write) -> Result<()> {
    let raw = read_input(&args.input)?;
    write_output(None, &DatasetStats::of(&raw).render(), stdout)
}

fn cmd_generate(args: GenerateArgs, stdout: &mut dyn Write) -> Result<()> {
    let spec = SparseSpec {
        skew: args.skew,
        ..SparseSpec::new(args.transactions, args.items, args.avg_len, args.seed)
    };
    let raw = spec.generate()?;
    write_output(args.output.as_deref(), &raw.to_fimi_string(), stdout)
}

/// Fixed-point rendering with trailing zeros removed: 2.2, 0, 10.125.
fn format_decimal(x: f64, places: usize) -> String {
    let s = format!("{x:.places$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minsup_parsing() {
        assert_eq!(MinsupSpec::parse("2").unwrap(), MinsupSpec::Absolute(2));
        assert_eq!(MinsupSpec::parse("0.4").unwrap().to_absolute(5), 2);
        assert_eq!(MinsupSpec::parse("0.001").unwrap().to_absolute(100_000), 100);
        assert_eq!(MinsupSpec::parse("0.0011").unwrap().to_absolute(100_000), 110);
        assert_eq!(MinsupSpec::parse("0.41").unwrap().to_absolute(5), 3);
        assert_eq!(MinsupSpec::parse("1.0").unwrap().to_absolute(5), 5);
        assert_eq!(MinsupSpec::parse(".5").unwrap().to_absolute(3), 2);
        assert_eq!(MinsupSpec::parse("0.5").unwrap().to_absolute(0), 1);
        assert_eq!(MinsupSpec::parse("6").unwrap().to_absolute(5), 6);
        for bad in ["0", "0.0", "1.5", "abc", "", ".", "-1", "1e-3", "5000000000"] {
            assert!(MinsupSpec::parse(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_decimal(2.2, 4), "2.2");
        assert_eq!(format_decimal(0.0, 4), "0");
        assert_eq!(format_decimal(10.0, 4), "10");
        assert_eq!(format_decimal(1.0 / 3.0, 4), "0.3333");
    }

    #[test]
    fn generator_specs() {
        let g = parse_generator("gen:100:20:5:42").unwrap();
        assert_eq!(g, SparseSpec::new(100, 20, 5, 42));
        assert!(parse_generator("gen:100:20:5").is_err());
        assert!(parse_generator("sparse:1:2:3:4").is_err());
        assert!(parse_generator("gen:a:2:3:4").is_err());
    }

    #[test]
    fn canonical_rendering_sorts_numerically() {
        let raw = dataset::parse_fimi_str("10 9\n10 9\n2 9\n2 9\n").unwrap();
        let out = run_algorithm(&raw, 2, Algorithm::Hybrid, &MinerConfig::new(2)).unwrap();
        assert_eq!(out.canonical, "2 9 (2)\n9 10 (2)\n");
    }

    #[test]
    fn stats_of_empty_database() {
        let s = DatasetStats::of(&RawDatabase::default());
        assert_eq!(
            s.render(),
            "Items=0\nRecords=0\nAverage Length=0\nMin Length=0\nMax Length=0\n"
        );
    }
}
