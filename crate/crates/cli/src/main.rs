//! `cpwl`: build, evaluate, analyse and benchmark CPWL lookup tables.
//!
//! Exit status: 0 on success, 2 for invalid flags, 3 for runtime failures.

mod args;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

use args::{Grid, MethodArg, OobArg, PartitionArg, SegmentList, Sweep};

#[derive(Debug, Parser)]
#[command(
    name = "cpwl",
    version,
    about = "Near-optimal CPWL approximation and lookup tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Approximate a function and write the table file.
    Build(BuildArgs),
    /// Evaluate a table file.
    Eval(EvalArgs),
    /// Convergence sweep as CSV: n,variant,measured,predicted.
    Report(ReportArgs),
    /// Time direct evaluation against uniform and optimized tables.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct FunctionArgs {
    /// Built-in function: gaussian, lorentzian, lorentzian(x0,gamma), bessel_j0, quintic.
    #[arg(long)]
    function: Option<String>,
    /// Expression in x, e.g. "exp(-x^2/2)".
    #[arg(long)]
    expr: Option<String>,
}

#[derive(Debug, Args)]
struct DomainArgs {
    #[command(flatten)]
    source: FunctionArgs,
    /// Interval a:b; defaults to the function's own domain.
    #[arg(long, value_parser = args::interval, allow_hyphen_values = true)]
    interval: Option<(f64, f64)>,
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = cpwl::quad::DEFAULT_TOL)]
    tol: f64,
}

#[derive(Debug, Args)]
struct BuildArgs {
    #[command(flatten)]
    domain: DomainArgs,
    /// Number of segments N
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    segments: u32,
    #[arg(long, value_enum, default_value_t = PartitionArg::Uniform)]
    partition: PartitionArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Interp)]
    method: MethodArg,
    /// Policy stored in the table for abscissas outside [a, b].
    #[arg(long, value_enum, default_value_t = OobArg::Strict)]
    oob: OobArg,
    /// Store 32-bit floats (lossy).
    #[arg(long)]
    f32: bool,
    /// Table file to write
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("points").required(true).multiple(false).args(["x", "input", "grid"])))]
struct EvalArgs {
    /// Table file written by `build`
    #[arg(long)]
    table: PathBuf,
    /// A single abscissa.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    /// File with one abscissa per line.
    #[arg(long)]
    input: Option<PathBuf>,
    /// a:b:n, n points from a to b inclusive.
    #[arg(long, value_parser = args::parse_grid, allow_hyphen_values = true)]
    grid: Option<Grid>,
    /// Override the policy stored in the table.
    #[arg(long, value_enum)]
    oob: Option<OobArg>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[command(flatten)]
    domain: DomainArgs,
    /// n0:n1; every power of two in the range.
    #[arg(long, value_parser = args::parse_sweep)]
    sweep: Sweep,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[command(flatten)]
    domain: DomainArgs,
    /// Comma-separated segment counts.
    #[arg(long, value_parser = args::parse_segment_list, default_value = "32,64,128,256,512")]
    segments: SegmentList,
    #[arg(long, value_enum, default_value_t = MethodArg::Interp)]
    method: MethodArg,
    /// Random abscissas per pass (at least 100000)
    #[arg(long, default_value_t = 1_000_000)]
    points: usize,
    /// Timed repetitions per variant (at least 5)
    #[arg(long, default_value_t = 7)]
    reps: usize,
    /// Seed for the random abscissas
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit CSV instead of an aligned table.
    #[arg(long)]
    csv: bool,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Build(a) => commands::build(a),
        Command::Eval(a) => commands::eval(a),
        Command::Report(a) => commands::report(a),
        Command::Bench(a) => commands::bench(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
