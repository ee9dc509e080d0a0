//! `stokeslab solve|continue|analyze|verify`.

mod analyze;
mod branch;
mod config;
mod verify;

use std::path::PathBuf;

use stokeslab_core::Error;

pub use analyze::{AnalysisRow, AnalysisSummary};
pub use config::{parse_window, Cli, Command, RunConfig};
pub use verify::{ActionCheck, Check, VerifyReport};

/// What a command produced.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    /// Human-readable summary for stdout.
    pub message: String,
    pub files: Vec<PathBuf>,
}

pub fn run(config: &RunConfig) -> Result<Outcome, Error> {
    config.validate()?;
    match config.command {
        Command::Solve => branch::solve(config),
        Command::Continue => branch::continue_branch(config),
        Command::Analyze => analyze::analyze(config),
        Command::Verify => verify::verify(config),
    }
}

/// Process exit status for an error.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidArgument(_) => 2,
        Error::Parse { .. } => 3,
        Error::Config(_) => 4,
        Error::Io(_) => 5,
        _ => 1,
    }
}
