use std::path::PathBuf;

use clap::{Parser, Subcommand};
use stokeslab_core::babenko::{SolverConfig, StepControl};
use stokeslab_core::{DepthMode, Error, Result};

#[derive(Debug, Parser)]
#[command(name = "stokeslab", version, about = "Stokes waves from Babenko's equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Solve for one wave of crest-to-trough height --height and write it as a branch record.
    Solve(Flags),
    /// Extend a branch file up to --to-height, resuming from its last record.
    Continue(Flags),
    /// Fit crest singularities of every state in a branch file.
    Analyze(Flags),
    /// Run the exponent, lemma, action-coefficient and cancellation checks.
    Verify(Flags),
}

#[derive(Debug, Clone, clap::Args)]
pub struct Flags {
    /// Grid size (even).
    #[arg(long = "n")]
    pub n: Option<usize>,
    /// deep | depth=<h> | toy
    #[arg(long)]
    pub mode: Option<DepthMode>,
    #[arg(long)]
    pub height: Option<f64>,
    #[arg(long = "to-height")]
    pub to_height: Option<f64>,
    /// Newton tolerance on the residual max-norm.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, default_value_t = 25)]
    pub max_iters: usize,
    /// Disable dealiased products.
    #[arg(long)]
    pub no_dealias: bool,
    #[arg(long, default_value_t = 0.01)]
    pub tail_abort: f64,
    /// Height increment for continuation.
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    #[arg(long, default_value_t = 1e-5)]
    pub min_step: f64,
    #[arg(long)]
    pub branch: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Fit window `a:b` in |u|.
    #[arg(long, value_parser = parse_window)]
    pub window: Option<(f64, f64)>,
    #[arg(long)]
    pub subleading: bool,
    /// Directory for profile, surface and fit CSVs.
    #[arg(long)]
    pub export: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Solve,
    Continue,
    Analyze,
    Verify,
}

/// Fully resolved command configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n: Option<usize>,
    pub mode: Option<DepthMode>,
    pub height: Option<f64>,
    pub to_height: Option<f64>,
    pub tol: f64,
    pub max_iters: usize,
    pub dealias: bool,
    pub tail_abort: f64,
    pub steps: StepControl,
    pub branch: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub window: Option<(f64, f64)>,
    pub subleading: bool,
    pub export: Option<PathBuf>,
}

pub const DEFAULT_N: usize = 512;

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            n: None,
            mode: None,
            height: None,
            to_height: None,
            tol: 1e-12,
            max_iters: 25,
            dealias: true,
            tail_abort: 0.01,
            steps: StepControl { step: 0.01, min_step: 1e-5 },
            branch: None,
            out: None,
            window: None,
            subleading: false,
            export: None,
        }
    }

    pub fn solver(&self, n: usize) -> SolverConfig {
        SolverConfig {
            n,
            newton_tol: self.tol,
            max_iters: self.max_iters,
            dealias: self.dealias,
            tail_abort: self.tail_abort,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.n {
            if n < 4 || n % 2 != 0 {
                return Err(Error::Config(format!("--n must be even and at least 4, got {n}")));
            }
        }
        let needs = |name: &str, p: &Option<PathBuf>| match p {
            Some(p) if !p.as_os_str().is_empty() => Ok(()),
            _ => Err(Error::Config(format!("{name} is required for this command"))),
        };
        match self.command {
            Command::Solve | Command::Continue => needs("--branch", &self.branch),
            Command::Analyze => needs("--branch", &self.branch).and(needs("--out", &self.out)),
            Command::Verify => needs("--out", &self.out),
        }
    }
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig> {
        let (command, f) = match self.command {
            CliCommand::Solve(f) => (Command::Solve, f),
            CliCommand::Continue(f) => (Command::Continue, f),
            CliCommand::Analyze(f) => (Command::Analyze, f),
            CliCommand::Verify(f) => (Command::Verify, f),
        };
        let config = RunConfig {
            command,
            n: f.n,
            mode: f.mode,
            height: f.height,
            to_height: f.to_height,
            tol: f.tol,
            max_iters: f.max_iters,
            dealias: !f.no_dealias,
            tail_abort: f.tail_abort,
            steps: StepControl { step: f.step, min_step: f.min_step },
            branch: f.branch,
            out: f.out,
            window: f.window,
            subleading: f.subleading,
            export: f.export,
        };
        config.validate()?;
        Ok(config)
    }
}

pub fn parse_window(text: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = text.split_once(':').ok_or_else(|| format!("window `{text}` is not of the form a:b"))?;
    let a: f64 = a.trim().parse().map_err(|e| format!("window start: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("window end: {e}"))?;
    if !(a > 0.0 && b > a) {
        return Err(format!("window `{text}` needs 0 < a < b"));
    }
    Ok((a, b))
}
