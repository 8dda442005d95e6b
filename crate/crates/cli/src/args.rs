//! Command-line surface.
//!
//! Five subcommands: `analyze`, `line`, `circle`, `sweep`, `check`. Every
//! run is reproducible from its flags plus the single 64-bit `--seed`; the
//! only nondeterministic report field is the trailing `generated_unix`
//! timestamp.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Default seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 1729;

#[derive(Debug, Parser)]
#[command(
    name = "distdist",
    version,
    about = "Exact-arithmetic laboratory for distinct-distance counting experiments",
    after_help = "Exit codes: 0 success, 1 input error, 2 invariant violation, 3 size-guard refusal."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance statistics of one point set: n, D, heaviest line and circle.
    Analyze(AnalyzeArgs),
    /// Line-mode ledger: P1 on the x-axis, P2 strictly off it.
    Line(LineArgs),
    /// Circle-mode ledger: P1 on the unit circle, P2 off circle and axes.
    Circle(CircleArgs),
    /// Parameter sweep: one CSV row per (n, alpha) cell.
    Sweep(SweepArgs),
    /// Run the lemma-check suites and report each bound observed.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Input point set (.json or .csv).
    #[arg(long, value_name = "FILE", conflicts_with = "lattice")]
    pub input: Option<PathBuf>,

    /// Generate a WxH integer lattice instead of reading a file.
    #[arg(long, value_name = "WxH")]
    pub lattice: Option<String>,

    /// Write the JSON report to this file as well as stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Lift size guards (a warning goes to stderr).
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct LineArgs {
    /// Input point set (.json or .csv); split by the x-axis.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["lattice", "n", "alpha"])]
    pub input: Option<PathBuf>,

    /// Generate a WxH integer lattice and put one row on the x-axis.
    #[arg(long, value_name = "WxH", conflicts_with_all = ["n", "alpha"])]
    pub lattice: Option<String>,

    /// Which lattice row lands on the x-axis.
    #[arg(long, value_name = "K", default_value_t = 0, requires = "lattice")]
    pub row: usize,

    /// Total size of a generated configuration (requires --alpha).
    #[arg(long, requires = "alpha")]
    pub n: Option<u64>,

    /// On-axis share of a generated configuration: |P1| = round(n^alpha).
    #[arg(long, requires = "n")]
    pub alpha: Option<f64>,

    /// Seed for all generated randomness.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Write the JSON report to this file as well as stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Cross-check the ledger against the brute-force quadruple oracle.
    #[arg(long)]
    pub oracle: bool,

    /// Include the full curve-class table in the report.
    #[arg(long)]
    pub dump_curves: bool,

    /// Lift size guards (a warning goes to stderr).
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct CircleArgs {
    /// Input point set (.json or .csv); split by the unit circle.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["n", "alpha"])]
    pub input: Option<PathBuf>,

    /// Total size of a generated configuration (requires --alpha).
    #[arg(long, requires = "alpha")]
    pub n: Option<u64>,

    /// On-circle share of a generated configuration: |P1| = round(n^alpha).
    #[arg(long, requires = "n")]
    pub alpha: Option<f64>,

    /// Seed for all generated randomness.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Write the JSON report to this file as well as stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Cross-check the ledger against the brute-force quadruple oracle.
    #[arg(long)]
    pub oracle: bool,

    /// Include the full curve table in the report.
    #[arg(long)]
    pub dump_curves: bool,

    /// Lift size guards (a warning goes to stderr).
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Line,
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyPolicy {
    /// Verify incidences when the estimated cost is small enough.
    Auto,
    /// Always verify incidences, whatever the cost.
    Always,
    /// Record q2 without the incidence cross-check.
    Never,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Which framework to sweep.
    #[arg(long, value_enum)]
    pub mode: Mode,

    /// Alpha range `a0:a1:step`, both ends inclusive.
    #[arg(long, value_name = "A0:A1:STEP")]
    pub alpha: String,

    /// Size range `n0:n1`; n doubles from n0 until it exceeds n1.
    #[arg(long, value_name = "N0:N1")]
    pub n: String,

    /// Write CSV here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,

    /// Base seed; each cell derives its own seed from it.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// When to run the per-cell incidence cross-check.
    #[arg(long, value_enum, default_value_t = VerifyPolicy::Auto)]
    pub verify: VerifyPolicy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckMode {
    Line,
    Circle,
    Both,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Which suites to run.
    #[arg(long, value_enum, default_value_t = CheckMode::Both)]
    pub mode: CheckMode,

    /// Randomized configurations per framework.
    #[arg(long, default_value_t = 12)]
    pub configs: u64,

    /// Size of each randomized configuration.
    #[arg(long, default_value_t = 60)]
    pub n: u64,

    /// On-curve share of each randomized configuration.
    #[arg(long, default_value_t = 0.6)]
    pub alpha: f64,

    /// Curve pairs sampled per intersection suite.
    #[arg(long, default_value_t = 2000)]
    pub pairs: u64,

    /// Random tuples for the same-curve equivalence suite.
    #[arg(long, default_value_t = 1000)]
    pub tuples: u64,

    /// Engineered singular-matrix intersection cases.
    #[arg(long, default_value_t = 60)]
    pub singular: u64,

    /// Seed for all generated randomness.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Write the JSON report to this file as well as stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}
