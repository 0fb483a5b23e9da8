//! `ppicod` — generate instances, run the greedy solver, compute exact
//! Pareto boundaries, validate result files, and plot sweeps.
//!
//! Exit codes: 0 on success, 1 when an input fails validation or a check
//! fails, 2 on usage errors, 3 when an exhaustive search refuses to start
//! because it would exceed its object budget (the message states the exact
//! required count).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ppicod::greedy::EtaSpec;
use ppicod::instance::{parse_rational, Rational};
use ppicod::Error;

mod ops;
mod svg;

#[derive(Parser)]
#[command(name = "ppicod", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance as JSON
    Gen(GenArgs),
    /// Run the randomized greedy solver on one instance
    Solve(SolveArgs),
    /// Compute the exact length/satisfaction boundary by exhaustive search
    Boundary(BoundaryArgs),
    /// Run the solver across alphas and seeds; write logs, summaries, plots
    Sweep(SweepArgs),
    /// Validate an instance, code, or result file
    Check(CheckArgs),
    /// Draw sweep summaries against an exact boundary as SVG
    Plot(PlotArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    /// Random side information, random rank order per receiver
    Uniform,
    /// Two camps with opposed fixed rank orders (m = 8 only)
    Biased,
}

#[derive(Args)]
struct GenArgs {
    /// Demand model
    #[arg(long, value_enum, default_value_t = Model::Uniform)]
    model: Model,
    /// Field size (prime)
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Number of messages
    #[arg(long, default_value_t = 8)]
    m: usize,
    /// Number of receivers
    #[arg(long, default_value_t = 20)]
    n: usize,
    /// Side-information size per receiver
    #[arg(long, default_value_t = 3)]
    h: usize,
    /// RNG seed; the instance is a pure function of the flags
    #[arg(long)]
    seed: u64,
    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance JSON file
    #[arg(long)]
    input: PathBuf,
    /// Trade-off weight in [0, 1]: 1 chases coverage, 0 chases preference
    #[arg(long, value_parser = alpha_value, default_value = "1/2")]
    alpha: Rational,
    /// Rank thresholds: "min", "rowmax", a rational, or a comma list
    #[arg(long, value_parser = eta_value, default_value = "rowmax")]
    eta: EtaSpec,
    /// RNG seed; the run is a pure function of instance and flags
    #[arg(long)]
    seed: u64,
    /// Also report the Gaussian-elimination cleanup of the run
    #[arg(long)]
    post: bool,
    /// Re-audit the outcome against the instance before reporting it
    #[arg(long)]
    check: bool,
    /// Write the resulting code as JSON (the cleaned code under --post)
    #[arg(long)]
    emit_code: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodChoice {
    /// Enumerate decoding choices, minimize rank per choice
    #[value(name = "1")]
    DecodingFirst,
    /// Enumerate reduced codes, score each one
    #[value(name = "2")]
    CodeFirst,
    /// Run both and insist they agree
    Both,
}

#[derive(Args)]
struct BoundaryArgs {
    /// Instance JSON file
    #[arg(long)]
    input: PathBuf,
    /// Which exhaustive method to run
    #[arg(long, value_enum, default_value_t = MethodChoice::Both)]
    method: MethodChoice,
    /// Enumeration budget in objects; a refusal reports the required count
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Write the boundary (with witnesses) as CSV
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Instance JSON file
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated alphas, each in [0, 1]
    #[arg(
        long,
        value_delimiter = ',',
        value_parser = alpha_value,
        default_value = "0,1/4,1/2,3/4,1"
    )]
    alphas: Vec<Rational>,
    /// Rank thresholds: "min", "rowmax", a rational, or a comma list
    #[arg(long, value_parser = eta_value, default_value = "rowmax")]
    eta: EtaSpec,
    /// Runs per alpha
    #[arg(long, default_value_t = 20)]
    runs: u64,
    /// Seed of the first run; run r uses seed-base + r
    #[arg(long, default_value_t = 0)]
    seed_base: u64,
    /// Write one CSV row per run (raw and cleaned coordinates)
    #[arg(long)]
    runs_csv: Option<PathBuf>,
    /// Write one CSV row per alpha with exact mean cleaned coordinates
    #[arg(long)]
    aggregate_csv: Option<PathBuf>,
    /// Exact boundary CSV: every run is checked against it and the plot
    /// overlays it
    #[arg(long)]
    boundary: Option<PathBuf>,
    /// Write an SVG of mean points per alpha (plus boundary, if given)
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("target").required(true))]
struct CheckArgs {
    /// Instance JSON to validate
    #[arg(long, group = "target")]
    instance: Option<PathBuf>,
    /// Code JSON to evaluate; needs --against
    #[arg(long, group = "target", requires = "against")]
    code: Option<PathBuf>,
    /// Instance the code is evaluated against
    #[arg(long)]
    against: Option<PathBuf>,
    /// Boundary CSV (coordinates plus witnesses)
    #[arg(long, group = "target")]
    boundary: Option<PathBuf>,
    /// Plain front CSV
    #[arg(long, group = "target")]
    front: Option<PathBuf>,
    /// Greedy run log CSV
    #[arg(long, group = "target")]
    runs: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Sweep aggregate CSV (mean point per alpha)
    #[arg(long)]
    aggregate: PathBuf,
    /// Exact boundary CSV to overlay
    #[arg(long)]
    boundary: Option<PathBuf>,
    /// Output SVG path
    #[arg(long)]
    out: PathBuf,
}

fn alpha_value(text: &str) -> Result<Rational, String> {
    let v = parse_rational(text).map_err(|e| e.to_string())?;
    if v < Rational::new(0.into(), 1.into()) || v > Rational::new(1.into(), 1.into()) {
        return Err(format!("{text} is outside [0, 1]"));
    }
    Ok(v)
}

fn eta_value(text: &str) -> Result<EtaSpec, String> {
    EtaSpec::parse(text).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match ops::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}
