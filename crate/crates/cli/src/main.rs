//! `hyperdom`: generate hypergraphs, orient them, compute directed
//! p-domination numbers and bounds, and run the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
//! 3 inconsistent input files.

mod commands;
mod explore;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "hyperdom",
    version,
    about = "Directed p-domination in oriented uniform hypergraphs"
)]
struct Cli {
    /// Worker threads for parallel enumeration and search (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for every random choice made by the command.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a complete or random r-uniform hypergraph.
    Gen(GenArgs),
    /// Write a uniformly random orientation of a hypergraph.
    Orient(OrientArgs),
    /// Directed p-domination number of one orientation.
    Solve(SolveArgs),
    /// Upper directed p-domination number: exact enumeration or local search.
    GammaUpper(GammaUpperArgs),
    /// Table of analytic bounds over a range of n.
    Bounds(BoundsArgs),
    /// Complement coloring, chromatic bound, independence and clique numbers.
    Color(ColorArgs),
    /// Run a verification suite ("all" runs every suite).
    Verify(VerifyArgs),
    /// Empirical exploration presets (CSV; no claims attached).
    Explore(ExploreArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum GenKind {
    Complete,
    Random,
}

#[derive(Args, Debug, Serialize)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(short = 'n')]
    n: usize,
    #[arg(short = 'r')]
    r: usize,
    /// Edge count (random only).
    #[arg(short = 'm', required_if_eq("kind", "random"))]
    m: Option<usize>,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
    /// Emit JSON instead of the text format.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug, Serialize)]
struct OrientArgs {
    hypergraph: PathBuf,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["orientation", "random"]))]
struct SolveArgs {
    hypergraph: PathBuf,
    /// Orientation file in the text format.
    #[arg(long)]
    orientation: Option<PathBuf>,
    /// Use a random orientation drawn from --seed.
    #[arg(long)]
    random: bool,
    #[arg(short = 'p')]
    p: usize,
    /// Exact branch and bound (default).
    #[arg(long, conflicts_with = "greedy")]
    exact: bool,
    /// Greedy partition heuristic.
    #[arg(long)]
    greedy: bool,
    /// Node budget for the exact search.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct GammaUpperArgs {
    hypergraph: PathBuf,
    #[arg(short = 'p')]
    p: usize,
    /// Enumerate every orientation (default).
    #[arg(long, conflicts_with = "search")]
    exact: bool,
    /// Hill climbing over orientations.
    #[arg(long)]
    search: bool,
    /// Largest orientation count the exact mode accepts.
    #[arg(long, default_value_t = 100_000_000)]
    cap: u64,
    /// Pin the first edge's order (sound for vertex-transitive hypergraphs).
    #[arg(long)]
    fix_first_edge: bool,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    #[arg(long, default_value_t = 200)]
    max_steps: usize,
    #[arg(long, default_value_t = 20)]
    plateau: usize,
    /// Node budget per exact evaluation during search.
    #[arg(long, default_value_t = 200_000)]
    node_budget: u64,
    /// Write the witness orientation here (text format).
    #[arg(long)]
    witness_out: Option<PathBuf>,
    /// Write per-restart search traces here (CSV).
    #[arg(long)]
    trace_out: Option<PathBuf>,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Serialize)]
struct BoundsArgs {
    #[arg(short = 'r')]
    r: usize,
    #[arg(long)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    #[arg(long, default_value_t = 1)]
    n_step: usize,
    /// Prefix length; defaults to r-1.
    #[arg(short = 'p')]
    p: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct ColorArgs {
    hypergraph: PathBuf,
    #[arg(short = 'p')]
    p: usize,
    /// Largest vertex count for the exact searches.
    #[arg(long, default_value_t = 24)]
    cap: usize,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    #[arg(value_parser = suite_names())]
    suite: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    budget: u64,
    #[arg(long, default_value_t = 100_000)]
    cap: u64,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

fn suite_names() -> clap::builder::PossibleValuesParser {
    let mut names: Vec<&'static str> = hyperdom::verify::SUITES.to_vec();
    names.push("all");
    clap::builder::PossibleValuesParser::new(names)
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
enum Preset {
    /// Every p for complete H(n, r).
    CompleteGrowth,
    /// p = 2 on complete 3-uniform hypergraphs.
    PairPrefix,
    /// p = 1 on complete 3-uniform hypergraphs.
    SinglePrefix,
    /// Random hypergraphs against α(H)·ln n.
    AlphaRatio,
}

#[derive(Args, Debug, Serialize)]
struct ExploreArgs {
    #[arg(value_enum)]
    preset: Preset,
    #[arg(long)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    /// Uniformity (complete-growth and alpha-ratio).
    #[arg(short = 'r', default_value_t = 3)]
    r: usize,
    /// Prefix length (alpha-ratio).
    #[arg(short = 'p', default_value_t = 1)]
    p: usize,
    /// Edge density for alpha-ratio instances.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Exact enumeration is used while the orientation count stays under this.
    #[arg(long, default_value_t = 1_000_000)]
    cap: u64,
    #[arg(long, default_value_t = 4)]
    restarts: usize,
    #[arg(long, default_value_t = 100)]
    max_steps: usize,
    #[arg(long, default_value_t = 20)]
    plateau: usize,
    #[arg(long, default_value_t = 200_000)]
    node_budget: u64,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

/// How a failed run maps onto the exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or parameters, refusals.
    Usage(anyhow::Error),
    /// Files that do not parse or do not fit together.
    Input(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
        }
    }

    fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Usage(e) | Failure::Input(e) => e,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        use hyperdom::Error as E;
        let input = e.chain().any(|c| {
            matches!(
                c.downcast_ref::<E>(),
                Some(
                    E::Parse { .. }
                        | E::Mismatch(_)
                        | E::InvalidEdge { .. }
                        | E::VertexOutOfRange { .. }
                        | E::Json(_)
                )
            ) || c.is::<serde_json::Error>()
        });
        if input {
            Failure::Input(e)
        } else {
            Failure::Usage(e)
        }
    }
}

impl From<hyperdom::Error> for Failure {
    fn from(e: hyperdom::Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

/// Result of a command: `Ok(true)` on success, `Ok(false)` when a
/// verification check failed.
pub type Outcome = std::result::Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let seed = cli.seed;
    let outcome = match &cli.command {
        Command::Gen(a) => commands::gen(a, seed),
        Command::Orient(a) => commands::orient(a, seed),
        Command::Solve(a) => commands::solve(a, seed),
        Command::GammaUpper(a) => commands::gamma_upper(a, seed),
        Command::Bounds(a) => commands::bounds(a, seed),
        Command::Color(a) => commands::color(a, seed),
        Command::Verify(a) => commands::verify(a, seed),
        Command::Explore(a) => explore::run(a, seed),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {:#}", f.error());
            ExitCode::from(f.code())
        }
    }
}
