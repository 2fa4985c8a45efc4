//! `hdl`: experiments on Besov seminorms, Hankel spectra and Dixmier traces.

mod commands;
mod grid;
mod input;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl From<hardy_dixmier::Error> for CliError {
    fn from(e: hardy_dixmier::Error) -> Self {
        use hardy_dixmier::Error as E;
        match e {
            E::Decomposition { .. } | E::IndefiniteGram(_) | E::IntegrationFailure(_) | E::Overflow(_) => {
                CliError::Numeric(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}

const GRID_HELP: &str = "\
Grids:
  geometric:START:STOP:COUNT   COUNT log-spaced points from START to STOP.
                               For --p-grid these are p - 1, so
                               geometric:0.5:0.001:12 runs p from 1.5 toward 1.
  explicit:[a,b,...]           the listed values as given.
  Exponent grids must decrease strictly inside (1, 2]; time grids must
  increase strictly above 1.

Exit codes: 0 success, 2 configuration error, 3 numeric failure.
Set HDL_SVD_CAP to change the largest dense matrix (default 8192).";

#[derive(Parser, Debug)]
#[command(name = "hdl", version, about, after_help = GRID_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral seminorms of orders 1 and 2 against the dyadic norm.
    Besov(commands::BesovArgs),
    /// Dyadic block norms and the dyadic Besov norm along a p-grid.
    Dyadic(commands::DyadicArgs),
    /// Singular values of the N x N Hankel matrix.
    Hankel(commands::HankelArgs),
    /// Hankel operator on a weighted Bergman space.
    Bergman(commands::BergmanArgs),
    /// Limit curves of the four trace-equivalent quantities.
    Dixmier(commands::DixmierArgs),
    /// Oscillating Cesaro means for the non-measurable example.
    #[command(name = "demo-nonmeasurable")]
    Demo(commands::DemoArgs),
    /// Write an example lacunary symbol as JSON.
    Example(commands::ExampleArgs),
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Besov(a) => commands::besov(a),
        Command::Dyadic(a) => commands::dyadic(a),
        Command::Hankel(a) => commands::hankel(a),
        Command::Bergman(a) => commands::bergman(a),
        Command::Dixmier(a) => commands::dixmier(a),
        Command::Demo(a) => commands::demo(a),
        Command::Example(a) => commands::example(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hdl: {e}");
            match e {
                CliError::Config(_) => ExitCode::from(2),
                CliError::Numeric(_) => ExitCode::from(3),
            }
        }
    }
}
