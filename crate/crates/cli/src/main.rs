// `!(x > 0.0)` is the idiom that also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod config;
mod eig;
mod engine;
mod error;
mod output;
mod solve;
mod sweep;
mod verify;

use config::RunArgs;

/// Principal eigenvalues of Pucci-type radial operators with a singular
/// potential r^-gamma on the unit ball.
#[derive(Debug, Parser)]
#[command(name = "singular-eig", version, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Principal eigenvalue and eigenfunction from one engine.
    #[command(allow_negative_numbers = true)]
    Eig(RunArgs),
    /// Eigenvalues along a schedule of gamma, delta or eps values.
    Sweep(SweepArgs),
    /// Dirichlet problem F(D^2 u) + mu r^-gamma u = f with u = b on the boundary.
    Solve(SolveArgs),
    /// Harness checks and analytic oracles with a summary table.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// gamma | delta | eps
    #[arg(long)]
    pub vary: Option<String>,
    /// Comma-separated schedule, in row order.
    #[arg(long, value_delimiter = ',')]
    pub values: Option<Vec<f64>>,
    /// Comma-separated engines; defaults to --engine.
    #[arg(long, value_delimiter = ',')]
    pub engines: Option<Vec<String>>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SolveArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Coefficient of the zeroth-order term -beta r^-gamma u.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Constant right-hand side f.
    #[arg(long)]
    pub rhs: Option<f64>,
    /// Boundary value b.
    #[arg(long)]
    pub boundary: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only the named checks (repeatable or comma-separated).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// List the check names and exit.
    #[arg(long)]
    pub list: bool,
    /// Test mode: flip the sign of u' in the data the residual and profile
    /// checks consume; a correct harness reports failures.
    #[arg(long, hide = true)]
    pub inject_sign_bug: bool,
    #[arg(long, value_name = "PATH")]
    pub out: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Eig(args) => eig::run(&args),
        Command::Sweep(args) => sweep::run(&args),
        Command::Solve(args) => solve::run(&args),
        Command::Verify(args) => verify::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("singular-eig: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
