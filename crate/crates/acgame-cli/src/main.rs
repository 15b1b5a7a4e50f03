//! `acgame` — simulate collaboration games, compare strategies, search for
//! unstable coalitions, verify the built-in analytical checks, and
//! calibrate the model against a publication corpus.
//!
//! Exit codes: 0 success, 1 validation error, 2 runtime error,
//! 3 verification failure.

mod commands;
mod config;
mod trajectory_io;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Runtime(String),
    Verification(String),
}

impl CliError {
    fn validation(message: String) -> Self {
        CliError::Validation(message)
    }

    fn runtime(message: String) -> Self {
        CliError::Runtime(message)
    }

    fn verification(message: String) -> Self {
        CliError::Verification(message)
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Runtime(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Runtime(m) => write!(f, "runtime error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "acgame",
    about = "Collaboration-game simulator and analysis toolkit",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one game to its horizon; writes a per-year CSV and a JSON sidecar.
    Simulate {
        /// Game configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Trajectory CSV path (sidecar uses the same stem with .json).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the configured horizon.
        #[arg(long)]
        horizon: Option<u32>,
    },
    /// Compare per-player utility series of two strategy assignments and
    /// report an overtaking verdict for each player.
    Compare {
        /// Baseline game configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Alternative configuration sharing the roster; defaults to the
        /// baseline's embedded `alternative_strategies`.
        #[arg(long)]
        against: Option<PathBuf>,
        /// Override both horizons.
        #[arg(long)]
        horizon: Option<u32>,
        /// Tail window starts after this fraction of the horizon.
        #[arg(long = "burn-in", default_value_t = commands::default_burn_in())]
        burn_in: f64,
        /// Report path (JSON); stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for coalitions of at most k players that profitably deviate
    /// from the configured strategy profile.
    Stability {
        /// Baseline game configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated deviation catalog (default: the full built-in
        /// catalog), e.g. "solo_single_paper,solo_split{k=2}".
        #[arg(long)]
        catalog: Option<String>,
        /// Largest coalition size to consider (1 or 2).
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Override the configured horizon.
        #[arg(long)]
        horizon: Option<u32>,
        /// Tail window starts after this fraction of the horizon.
        #[arg(long = "burn-in", default_value_t = commands::default_burn_in())]
        burn_in: f64,
        /// Report path (JSON); stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in verification suite and print one row per check.
    Verify {
        /// Override the horizon of the trajectory and stability checks.
        #[arg(long)]
        horizon: Option<u32>,
    },
    /// Compute calibration curves and rank correlations from a publication
    /// corpus.
    Calibrate {
        /// Corpus file (CSV with header paper_id,year,citations,authors and
        /// semicolon-separated authors, or JSONL with the same fields).
        corpus: PathBuf,
        /// Corpus format: csv or jsonl.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Comma-separated selection among single_author, two_author,
        /// reinvestment, spearman (default: all).
        #[arg(long)]
        analysis: Option<String>,
        /// Output stem; files are written as <out>.<analysis>.csv plus
        /// <out>.summary.json.
        #[arg(long, default_value = "calibration")]
        out: PathBuf,
        /// Drop curve bins with fewer than this many samples.
        #[arg(long = "min-count", default_value_t = 1)]
        min_count: usize,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate {
            config,
            out,
            horizon,
        } => commands::cmd_simulate(&config, out, horizon),
        Command::Compare {
            config,
            against,
            horizon,
            burn_in,
            out,
        } => commands::cmd_compare(&config, against, horizon, burn_in, out),
        Command::Stability {
            config,
            catalog,
            k,
            horizon,
            burn_in,
            out,
        } => commands::cmd_stability(&config, catalog, k, horizon, burn_in, out),
        Command::Verify { horizon } => commands::cmd_verify(horizon),
        Command::Calibrate {
            corpus,
            format,
            analysis,
            out,
            min_count,
        } => {
            let format = commands::parse_format(&format)?;
            commands::cmd_calibrate(&corpus, format, analysis, &out, min_count)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not errors; anything else is bad usage.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
