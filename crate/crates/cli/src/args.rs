use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "spanners",
    version,
    about = "Build, verify and audit graph spanners and emulators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate an input graph.
    #[command(subcommand)]
    Gen(Gen),
    /// Build a spanner or emulator of an edge-list graph.
    #[command(subcommand)]
    Build(Build),
    /// Check a candidate against a stretch specification.
    Verify(VerifyArgs),
    /// Search a candidate for a forced distortion witness.
    #[command(subcommand)]
    Audit(Audit),
    /// Build and verify a parameter grid and print a table.
    Bench(BenchArgs),
}

#[derive(Subcommand, Debug)]
pub enum Gen {
    /// Erdős–Rényi graph G(n, p).
    Random(GenRandomArgs),
    /// Layered lower-bound graph.
    Lb(GenLbArgs),
}

#[derive(Args, Debug)]
pub struct GenRandomArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output edge list; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also draw this many sources under the same seed.
    #[arg(long, requires = "sources")]
    pub source_count: Option<usize>,
    /// Where to write the drawn sources.
    #[arg(long, requires = "source_count")]
    pub sources: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenLbArgs {
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub out: PathBuf,
    /// Bottom-level vertices, one id per line.
    #[arg(long)]
    pub sources: Option<PathBuf>,
    #[arg(long)]
    pub meta: Option<PathBuf>,
    #[arg(long, default_value_t = hybrid_spanners::lowerbound::DEFAULT_VERTEX_CAP)]
    pub max_vertices: usize,
}

/// Flags shared by every construction.
#[derive(Args, Debug)]
pub struct BuildCommon {
    /// Input edge list.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Output edge list (weighted for emulators).
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

/// Source set, read from a file or drawn under the seed.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// One vertex id per line.
    #[arg(long)]
    pub sources: Option<PathBuf>,
    /// Draw this many sources under `--seed`.
    #[arg(long)]
    pub source_count: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Build {
    /// Stretch 2k-1 on edges and k on all other pairs.
    Hybrid {
        #[command(flatten)]
        common: BuildCommon,
        #[arg(long)]
        k: usize,
        /// Keep path suffixes at both ends of each center path.
        #[arg(long)]
        suffix_both: bool,
    },
    /// Sourcewise stretch 2k-1 on source edges, 2k-2 otherwise.
    Swmult {
        #[command(flatten)]
        common: BuildCommon,
        #[command(flatten)]
        sources: SourceArgs,
        #[arg(long)]
        k: usize,
    },
    /// Sourcewise +2k spanner.
    Swadd {
        #[command(flatten)]
        common: BuildCommon,
        #[command(flatten)]
        sources: SourceArgs,
        #[arg(long)]
        k: usize,
        /// Redraw the BFS roots up to this many times while a long pair fails.
        #[arg(long, default_value_t = 0)]
        retries: usize,
    },
    /// Sourcewise +2 weighted emulator.
    Emulator {
        #[command(flatten)]
        common: BuildCommon,
        #[command(flatten)]
        sources: SourceArgs,
    },
    /// Sourcewise +4 spanner.
    Sw4 {
        #[command(flatten)]
        common: BuildCommon,
        #[command(flatten)]
        sources: SourceArgs,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub candidate: PathBuf,
    #[arg(long)]
    pub sources: Option<PathBuf>,
    /// e.g. `hybrid:k=2`, `swmult:k=3`, `additive:beta=4`, `emulator:beta=2`,
    /// `subset:beta=2`, optionally with `,formula=ID`.
    #[arg(long)]
    pub spec: String,
    /// JSON report; printed to stdout if absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Audit {
    /// Look for a chain of missing edges in a candidate of a lower-bound graph.
    Lb(AuditLbArgs),
}

#[derive(Args, Debug)]
pub struct AuditLbArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub meta: PathBuf,
    #[arg(long)]
    pub candidate: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    /// The full acceptance grid.
    Acceptance,
    /// Smallest size and first seed of each family only.
    Quick,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Grid::Acceptance)]
    pub grid: Grid,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    /// Table destination; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
