//! `ls1`: type-check, evaluate and compile programs of the calculus.

mod commands;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::{Format, Reporter};

#[derive(Parser, Debug)]
#[command(name = "ls1", version, about = "Norm-preserving quantum lambda calculus toolchain")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print every reduction step.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Reduction budget.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_steps: u64,
    /// Tolerance for coefficient comparisons and norm checks.
    #[arg(long, global = true, value_parser = positive)]
    pub tolerance: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Evaluate without type-checking first.
    #[arg(long, global = true)]
    pub no_check: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Infer the type of a program.
    Check { file: PathBuf },
    /// Type-check, then reduce to a canonical value distribution.
    Eval { file: PathBuf },
    /// Compile an isometry matrix (`.mat`) into a lambda term.
    CompileGate {
        matrix: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a circuit (`.circ`) on an input state, against the matrix semantics.
    Run {
        circuit: PathBuf,
        /// `|0110>` or comma-separated amplitudes; defaults to all zeros.
        #[arg(short, long)]
        input: Option<String>,
    },
    /// Decide whether two programs reduce to congruent value distributions.
    Equiv { left: PathBuf, right: PathBuf },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let reporter = Reporter::new(cli.format);
    if let Some(eps) = cli.tolerance {
        lambda_s1::scalar::set_tolerance(eps);
    }
    match commands::dispatch(&cli, &reporter) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            reporter.error(&e);
            ExitCode::from(e.exit_code())
        }
    }
}
