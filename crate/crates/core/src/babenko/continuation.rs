use crate::error::{invalid, Error, Result};
use crate::spectral::{DepthMode, Grid};

use super::diagnostics::{crest_to_trough, diagnose, Diagnostics};
use super::newton::solve_coefficients;
use super::state::{Constraint, SolverConfig, WaveState};

/// Height increments for fixed-height continuation.
///
/// Every step first tries `step`; a failed solve halves the increment until it
/// drops below `min_step`. The schedule depends only on the previous state, so
/// a branch resumed from any record reproduces an uninterrupted run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepControl {
    pub step: f64,
    pub min_step: f64,
}

impl Default for StepControl {
    fn default() -> Self {
        Self { step: 0.01, min_step: 1e-5 }
    }
}

impl StepControl {
    pub fn new(step: f64) -> Self {
        Self { step, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.min_step > 0.0 && self.min_step <= self.step) {
            return Err(invalid("step sizes must satisfy 0 < min_step <= step"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    TargetReached,
    /// Spectral tail energy exceeded `SolverConfig::tail_abort`.
    TailAbort,
    /// The next converged state rose to or above the Bernoulli level `c^2/2`.
    CrestGapExhausted,
    /// Newton kept failing down to the smallest allowed step.
    StepUnderflow,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::TargetReached => "target-reached",
            StopReason::TailAbort => "tail-abort",
            StopReason::CrestGapExhausted => "crest-gap-exhausted",
            StopReason::StepUnderflow => "step-underflow",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BranchEntry {
    /// Crest-to-trough height `s`.
    pub height: f64,
    pub speed: f64,
    pub cos_coeffs: Vec<f64>,
    pub state: WaveState,
    pub diagnostics: Diagnostics,
}

impl BranchEntry {
    pub fn from_coefficients(
        grid: Grid,
        mode: DepthMode,
        height: f64,
        speed: f64,
        cos_coeffs: Vec<f64>,
    ) -> Result<Self> {
        let state = WaveState::from_cosine(grid, &cos_coeffs, speed, mode)?;
        let diagnostics = diagnose(&state)?;
        Ok(Self { height, speed, cos_coeffs, state, diagnostics })
    }
}

#[derive(Clone, Debug)]
pub struct WaveBranch {
    pub entries: Vec<BranchEntry>,
    pub stop: StopReason,
    /// Set when the target height was not reached.
    pub truncated: bool,
}

/// Solves for the wave of height `height` from the linear-theory guess
/// `eta = (s/2) cos u`, `c = 1/sqrt(K(1))`.
pub fn seed_entry(grid: Grid, mode: DepthMode, height: f64, config: &SolverConfig) -> Result<BranchEntry> {
    if grid.len() != config.n {
        return Err(invalid("grid size does not match the solver configuration"));
    }
    let guess = [0.0, 0.5 * height];
    let speed = 1.0 / mode.symbol(1).sqrt();
    let sol = solve_coefficients(grid, mode, &guess, speed, Constraint::FixedHeight(height), config)?;
    BranchEntry::from_coefficients(grid, mode, height, sol.speed, sol.coeffs)
}

/// Continues from a converged even `seed` up to `target_height`.
///
/// The seed is re-solved at its own height and becomes the first entry.
pub fn continue_branch(
    seed: &WaveState,
    target_height: f64,
    steps: StepControl,
    config: &SolverConfig,
) -> Result<WaveBranch> {
    let height = crest_to_trough(&seed.profile);
    if !(target_height > height) {
        return Err(invalid(format!(
            "target height {target_height} does not exceed the seed height {height}"
        )));
    }
    let coeffs = seed.profile.cosine_coefficients();
    let sol = solve_coefficients(
        seed.grid(),
        seed.mode,
        &coeffs,
        seed.speed,
        Constraint::FixedHeight(height),
        config,
    )?;
    let first = BranchEntry::from_coefficients(seed.grid(), seed.mode, height, sol.speed, sol.coeffs)?;
    continue_from_entry(&first, target_height, steps, config)
}

/// Rounds a height to a 1e-12 lattice so repeated increments do not drift;
/// a branch resumed from a stored record then retraces the same heights.
fn snap(h: f64) -> f64 {
    (h * 1e12).round() / 1e12
}

/// Continues from an existing entry (for instance the last record of a stored branch).
pub fn continue_from_entry(
    seed: &BranchEntry,
    target_height: f64,
    steps: StepControl,
    config: &SolverConfig,
) -> Result<WaveBranch> {
    steps.validate()?;
    config.validate()?;
    if !(target_height > seed.height) {
        return Err(invalid(format!(
            "target height {target_height} does not exceed the seed height {}",
            seed.height
        )));
    }
    let grid = seed.state.grid();
    if grid.len() != config.n {
        return Err(invalid("seed grid size does not match the solver configuration"));
    }
    let mode = seed.state.mode;
    let mut entries = vec![seed.clone()];

    let stop = loop {
        let last = entries.last().expect("branch is never empty");
        if last.height >= target_height {
            break StopReason::TargetReached;
        }
        let mut dh = steps.step;
        let next = loop {
            let s = snap(last.height + dh).min(target_height);
            match solve_coefficients(grid, mode, &last.cos_coeffs, last.speed, Constraint::FixedHeight(s), config) {
                Ok(sol) => break Some((s, sol)),
                Err(Error::NoConvergence { .. } | Error::SingularJacobian) => {
                    dh *= 0.5;
                    if dh < steps.min_step {
                        break None;
                    }
                }
                Err(e) => return Err(e),
            }
        };
        let Some((s, sol)) = next else {
            if entries.len() == 1 {
                return Err(Error::NoConvergence { iterations: config.max_iters, residual: f64::NAN });
            }
            break StopReason::StepUnderflow;
        };
        let entry = BranchEntry::from_coefficients(grid, mode, s, sol.speed, sol.coeffs)?;
        if entry.diagnostics.tail_fraction > config.tail_abort {
            break StopReason::TailAbort;
        }
        if entry.diagnostics.crest_gap <= 0.0 {
            break StopReason::CrestGapExhausted;
        }
        entries.push(entry);
    };
    Ok(WaveBranch { truncated: stop != StopReason::TargetReached, entries, stop })
}
