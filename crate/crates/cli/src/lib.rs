//! Batch interface to `hypcurve-core`: JSON documents for curves and curve
//! spaces, and the `hypcurve` subcommands.

pub mod commands;
pub mod doc;
pub mod error;
pub mod io;
pub mod render;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use error::{CliError, CliResult};

/// Environment variable overriding the unit-length tolerance for tangents.
pub const TOL_ENV: &str = "HYPCURVE_TOL";
pub const DEFAULT_TOL: f64 = 1e-8;

/// Tolerance from [`TOL_ENV`], or [`DEFAULT_TOL`] when unset.
pub fn tolerance() -> CliResult<f64> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(CliError::Validation(format!("{TOL_ENV} must be a positive number, got {s:?}"))),
        },
    }
}

#[derive(Debug, Parser)]
#[command(name = "hypcurve", version, about = "Curves of constrained curvature in the hyperbolic plane")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a curve document as SVG, or export a CSV trace when `--out` ends in `.csv`.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// disk, halfplane or mercator; defaults to the document's model.
        #[arg(long)]
        model: Option<String>,
        /// Mark the ends of the normal rays at both endpoints (disk only).
        #[arg(long)]
        alpha: bool,
    },
    /// Decide whether a curve space is empty; writes a report and a witness.
    Classify {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Model of the witness document.
        #[arg(long)]
        model: Option<String>,
    },
    /// Reduce a curve space to its normal form; writes a recipe and the reduced problem.
    Reduce {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Model of the normalized tangents.
        #[arg(long)]
        model: Option<String>,
    },
    /// Translate a curve along its normal by `--rho`.
    Translate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        rho: f64,
    },
    /// Deform curves of a space into each other; writes frames and a report into `--out`.
    Contract {
        case: Case,
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, default_value_t = 20)]
        frames: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        model: Option<String>,
    },
}

#[derive(Debug, clap::Args)]
pub struct ProblemArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub turning: Option<f64>,
    /// Restarts allowed when searching for a witness.
    #[arg(long)]
    pub budget: Option<usize>,
}

impl ProblemArgs {
    fn overrides(&self) -> commands::ProblemOverrides {
        commands::ProblemOverrides {
            kappa1: self.kappa1,
            kappa2: self.kappa2,
            turning: self.turning,
            budget: self.budget,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Case {
    Disjoint,
    Contained,
}

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Render { input, out, model, alpha } => commands::render(input, out, model.as_deref(), *alpha),
        Command::Classify { problem, model } => {
            commands::classify(&problem.input, &problem.out, model.as_deref(), tolerance()?, &problem.overrides())
        }
        Command::Reduce { problem, model } => {
            commands::reduce_problem(&problem.input, &problem.out, model.as_deref(), tolerance()?, &problem.overrides())
        }
        Command::Translate { input, out, rho } => commands::translate(input, out, *rho),
        Command::Contract { case, inputs, frames, out, model } => {
            let case = match case {
                Case::Disjoint => commands::ContractCase::Disjoint,
                Case::Contained => commands::ContractCase::Contained,
            };
            commands::contract(case, inputs, *frames, out, model.as_deref())
        }
    }
}
