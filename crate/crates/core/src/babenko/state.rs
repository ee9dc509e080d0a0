use crate::error::{invalid, Result};
use crate::spectral::{k_multiplier, DepthMode, Grid, PeriodicProfile, SpectralMultiplier};

/// A candidate Stokes wave: profile `eta(u)`, speed `c`, and depth mode.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveState {
    pub profile: PeriodicProfile,
    pub speed: f64,
    pub mode: DepthMode,
}

impl WaveState {
    pub fn new(profile: PeriodicProfile, speed: f64, mode: DepthMode) -> Result<Self> {
        mode.validate()?;
        if !speed.is_finite() {
            return Err(invalid(format!("wave speed must be finite, got {speed}")));
        }
        Ok(Self { profile, speed, mode })
    }

    pub fn flat(grid: Grid, speed: f64, mode: DepthMode) -> Result<Self> {
        Self::new(PeriodicProfile::zeros(grid), speed, mode)
    }

    /// Even state `eta = sum_n a_n cos(n u)`.
    pub fn from_cosine(grid: Grid, coeffs: &[f64], speed: f64, mode: DepthMode) -> Result<Self> {
        Self::new(PeriodicProfile::from_cosine_coefficients(grid, coeffs)?, speed, mode)
    }

    #[inline]
    pub fn grid(&self) -> Grid {
        self.profile.grid()
    }

    pub fn k_operator(&self) -> Result<SpectralMultiplier> {
        k_multiplier(self.mode, self.grid().len())
    }
}

/// Extra scalar condition closing the Newton system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Constraint {
    /// `c` is held fixed.
    FixedSpeed,
    /// `c` is an unknown and the crest-to-trough height `eta(0) - eta(pi)` is pinned.
    FixedHeight(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub n: usize,
    /// Bound on the max-norm of the residual (and of the height mismatch).
    pub newton_tol: f64,
    pub max_iters: usize,
    pub dealias: bool,
    /// Continuation stops once the top-decile spectral energy fraction exceeds this.
    pub tail_abort: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { n: 512, newton_tol: 1e-12, max_iters: 25, dealias: true, tail_abort: 0.01 }
    }
}

impl SolverConfig {
    pub fn with_n(n: usize) -> Self {
        Self { n, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        Grid::new(self.n)?;
        if !(self.newton_tol > 0.0) {
            return Err(invalid("newton tolerance must be positive"));
        }
        if self.max_iters == 0 {
            return Err(invalid("max_iters must be at least 1"));
        }
        if !(self.tail_abort > 0.0) {
            return Err(invalid("tail_abort must be positive"));
        }
        Ok(())
    }
}
