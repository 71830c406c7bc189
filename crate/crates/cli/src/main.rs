//! `netmat`: compute network matrices, audit identities, generate datasets,
//! hunt counterexamples.
//!
//! Exit codes: 0 success, 1 soundness failure, 2 usage or parse error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "netmat", version, about = "Network structure/utilization matrices and identity auditing")]
pub struct Cli {
    /// Matrix file format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Seed for `gen` and `hunt`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Suppress console output.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write every structure and utilization matrix plus a summary.
    Compute(Inputs),
    /// Evaluate the identity catalogue on a dataset.
    Audit {
        #[command(flatten)]
        inputs: Inputs,
        /// Use this catalogue JSON instead of the built-in one.
        #[arg(long)]
        catalogue: Option<PathBuf>,
    },
    /// Generate a random dataset.
    Gen(GenArgs),
    /// Search for a dataset falsifying one identity.
    Hunt(HuntArgs),
    /// Export the built-in identity catalogue as JSON.
    Catalogue,
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Edge-list file.
    pub graph: PathBuf,
    /// Trajectory file.
    pub trajectories: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub edge_prob: Option<f64>,
    #[arg(long)]
    pub max_traj: Option<usize>,
    /// Defaults to n.
    #[arg(long)]
    pub max_len: Option<usize>,
    #[arg(long)]
    pub allow_duplicates: bool,
    /// Cover every edge with at least one trajectory.
    #[arg(long)]
    pub fully_utilized: bool,
}

#[derive(Debug, Args)]
pub struct HuntArgs {
    /// Catalogue id, e.g. X.EHAT_L_NEQ_L.
    pub id: String,
    #[arg(long, default_value_t = 1000)]
    pub budget: usize,
    /// Never generate repeated trajectories.
    #[arg(long)]
    pub no_duplicates: bool,
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    #[arg(long, default_value_t = 8)]
    pub max_traj: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
