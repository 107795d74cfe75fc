//! `thirdbvp` command-line front end.

mod commands;
mod config;
mod output;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thirdbvp::QuadratureRule;

#[derive(Debug, Parser)]
#[command(name = "thirdbvp", version, about = "Green's function iteration for third-order boundary value problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the iteration and write the solution and a JSON report.
    Solve(SolveArgs),
    /// Sample the existence and uniqueness hypotheses for a bound M.
    Check(CheckArgs),
    /// Dump a Green's function on a t x s grid.
    Kernel(KernelArgs),
    /// Grid-refinement study against the exact solution.
    Convergence(ConvergenceArgs),
    /// List the built-in problems.
    List,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Built-in problem name (see `list`).
    #[arg(long)]
    problem: Option<String>,
    /// JSON run configuration; explicit flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Grid spacing; 1/h must be an integer.
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    /// Bound M used for q, p_k and the envelope checks.
    #[arg(long = "M")]
    bound: Option<f64>,
    #[arg(long)]
    rule: Option<QuadratureRule>,
    /// Solution CSV (`t,u,du,d2u,phi`).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// JSON report; printed to stdout when absent.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    problem: String,
    /// Defaults to the problem's own bound.
    #[arg(long = "M")]
    bound: Option<f64>,
    #[arg(long, default_value_t = thirdbvp::conditions::DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["case", "bc_file"])))]
struct KernelArgs {
    /// Catalog case 1-4.
    #[arg(long)]
    case: Option<thirdbvp::CaseId>,
    /// JSON boundary coefficients `a1 .. g3`, optional `ends`.
    #[arg(long = "bc-file")]
    bc_file: Option<PathBuf>,
    /// Intervals per axis.
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also build the kernel from the case's coefficients and report the
    /// largest gap to the closed form on stderr.
    #[arg(long = "compare-general", requires = "case")]
    compare_general: bool,
}

#[derive(Debug, Args)]
struct ConvergenceArgs {
    #[arg(long)]
    problem: String,
    #[arg(long, default_value_t = 0.04)]
    h0: f64,
    #[arg(long, default_value_t = 3)]
    levels: usize,
    #[arg(long, default_value_t = thirdbvp::picard::DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long = "max-iter", default_value_t = thirdbvp::picard::DEFAULT_MAX_ITER)]
    max_iter: usize,
    #[arg(long, default_value_t = QuadratureRule::SplitAtDiagonal)]
    rule: QuadratureRule,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::Check(args) => commands::check(args),
        Command::Kernel(args) => commands::kernel(args),
        Command::Convergence(args) => commands::convergence(args),
        Command::List => commands::list(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
