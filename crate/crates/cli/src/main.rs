//! Command-line front end: evaluate entanglement measures on states,
//! run batched inequality checks over Haar-random samples, and drive
//! the grid scans and threshold bisections.
//!
//! Exit codes: 0 success / no violation, 1 inequality violation found,
//! 2 usage or parse error, 3 numerical-oracle non-convergence.

mod check;
mod eval;
mod state;
mod sweep;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use renyi_lab::Error;

#[derive(Parser)]
#[command(
    name = "renyi-lab",
    version,
    about = "Renyi-alpha entanglement laboratory"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a measure or residual on a single state.
    Eval(eval::EvalArgs),
    /// Monte-Carlo inequality checks over Haar-random states.
    Check(check::CheckArgs),
    /// Grid scans and threshold bisections for the bridge function.
    Sweep(sweep::SweepArgs),
}

fn configure_threads() -> Result<(), String> {
    if let Ok(v) = std::env::var("RENYI_LAB_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| format!("RENYI_LAB_THREADS must be a positive integer, got '{v}'"))?;
        if n == 0 {
            return Err("RENYI_LAB_THREADS must be positive".to_string());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| format!("cannot configure thread pool: {e}"))?;
    }
    Ok(())
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NonConvergence(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Eval(args) => eval::run(&args),
        Command::Check(args) => check::run(&args),
        Command::Sweep(args) => sweep::run(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// Round-trip-safe float formatting for CSV output: 17 significant digits.
pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub(crate) const VERSION: &str = env!("CARGO_PKG_VERSION");
