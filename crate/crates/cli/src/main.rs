//! Command-line front end for constructing and verifying traveling waves
//! of the coupled wave system.
//!
//! Subcommands: `reduce` (coefficients of the traveling-wave ODE),
//! `solve` (closed-form wave parameters plus an optional CSV grid),
//! `verify` (residual adjudication with exit code 3 on failure),
//! `figures` (the two reference CSV datasets).
//!
//! Exit codes: 0 success, 1 input error, 2 inadmissible coefficients,
//! 3 verification failure.

mod commands;
mod config;
mod error;
mod output;
mod pipeline;

use clap::{Parser, Subcommand};
use error::CliError;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "travwave", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map physical coefficients to the cubic traveling-wave ODE.
    Reduce {
        /// JSON job configuration.
        #[arg(long)]
        config: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct a closed-form wave and report its parameters.
    Solve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also sample the wave over the grid into this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Construct a wave and substitute it back into the equations.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Residual pass threshold (default 1e-6).
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Emit the kink and singular-wave reference datasets.
    Figures {
        /// Output directory for fig1.csv and fig2.csv.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Reduce { config, out } => {
            let config = config::load(&config)?;
            commands::cmd_reduce(&config, out.as_deref())
        }
        Command::Solve { config, out, csv } => {
            let config = config::load(&config)?;
            commands::cmd_solve(&config, out.as_deref(), csv.as_deref())
        }
        Command::Verify {
            config,
            out,
            tolerance,
        } => {
            let config = config::load(&config)?;
            commands::cmd_verify(&config, out.as_deref(), tolerance)
        }
        Command::Figures { out } => commands::cmd_figures(&out),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
