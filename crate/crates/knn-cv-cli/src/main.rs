//! `knncv` — LOOCV toolkit for k-NN regression.
//!
//! Subcommands: `sweep` (per-k scores), `validate` (brute vs fast
//! agreement), `bench` (timing across sizes), `diagnose` (duplicate and
//! distance-tie report), `dedupe` (collapse duplicate inputs), and
//! `synth` (seeded synthetic datasets).
//!
//! Exit codes: 0 success; 1 tie-breaking assumption violated (expected
//! divergence); 2 configuration error; 3 data error; 4 divergence with
//! the assumption satisfied (a correctness failure).

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod opts;
mod report;
mod synthgen;

use commands::{bench, dedupe, diagnose, sweep, synth, validate};

#[derive(Parser, Debug)]
#[command(
    name = "knncv",
    version,
    about = "k-NN regression LOOCV: fast exact scores, sweeps, diagnostics, benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute LOOCV scores over a k range.
    Sweep(sweep::SweepArgs),
    /// Check that the brute and fast LOOCV routes agree.
    Validate(validate::ValidateArgs),
    /// Time the LOOCV routes across dataset sizes.
    Bench(bench::BenchArgs),
    /// Report duplicate inputs and exact distance ties.
    Diagnose(diagnose::DiagnoseArgs),
    /// Collapse duplicate inputs by averaging their outputs.
    Dedupe(dedupe::DedupeArgs),
    /// Generate a seeded synthetic regression dataset.
    Synth(synth::SynthArgs),
}

/// Failures that abort a command, tagged with the exit-code class.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or ranges — exit 2.
    Config(String),
    /// Unreadable or invalid data — exit 3.
    Data(String),
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError::Config(message.into())
    }

    pub fn data_msg(message: impl Into<String>) -> Self {
        CliError::Data(message.into())
    }

    pub fn data(error: knn_cv::Error) -> Self {
        CliError::Data(error.to_string())
    }

    pub fn io(error: csv::Error) -> Self {
        CliError::Data(error.to_string())
    }

    /// Classifies a library error: k-range problems are configuration,
    /// everything else is a data problem.
    pub fn from_lib(error: knn_cv::Error) -> Self {
        use knn_cv::Error::*;
        match error {
            InvalidK | KTooLarge { .. } | EmptySweep | RowOutOfBounds { .. } => {
                CliError::Config(error.to_string())
            }
            other => CliError::Data(other.to_string()),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Data(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Data(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Sweep(args) => sweep::run(args),
        Command::Validate(args) => validate::run(args),
        Command::Bench(args) => bench::run(args),
        Command::Diagnose(args) => diagnose::run(args),
        Command::Dedupe(args) => dedupe::run(args),
        Command::Synth(args) => synth::run(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(error) => {
            eprintln!("error: {}", error.message());
            ExitCode::from(error.exit_code())
        }
    }
}
