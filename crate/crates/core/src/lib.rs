//! Spectral computation of periodic Stokes waves from Babenko's equation in
//! holomorphic coordinates, and numerical checks of the crest singularity.
//!
//! The crate is split into four layers:
//!
//! * [`spectral`]: staggered periodic grids, Fourier multipliers (the
//!   operators `K_h`, `K_inf`, the periodic Hilbert transform), dealiased
//!   products, and an independent principal-value quadrature for `H`.
//! * [`babenko`]: residual, Jacobian, Newton solver, height continuation,
//!   diagnostics, and the conformal reconstruction of the physical surface.
//! * [`singularity`]: exponent equations, asymptotic action coefficients of
//!   `K_inf` on fractional powers, Hilbert-remainder reports, the `|u|^{1/3}`
//!   cancellation check, and crest fits.
//! * [`io`]: JSON-lines branch files and CSV exports.
//!
//! Units are dimensionless with `g = 1` and wavelength `2 pi`.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod babenko;
pub mod error;
pub mod io;
pub mod singularity;
pub mod spectral;

pub use babenko::{
    continue_branch, diagnose, newton_solve, physical_surface, BranchEntry, Constraint,
    Diagnostics, PhysicalSurface, SolverConfig, StepControl, StopReason, WaveBranch, WaveState,
};
pub use error::{Error, Result};
pub use singularity::{
    cancellation_check, crest_fit, find_exponents, grant_lhs, lemma_remainder_report,
    log_case_check, measured_action_coefficient, predicted_action_coefficient, Exponents,
    LemmaReport, SingularityFit,
};
pub use io::{load_branch, store_branch, BranchRecord};
pub use spectral::{
    apply_multiplier, make_grid, sample_power, DepthMode, Grid, Parity, PeriodicProfile,
    SpectralMultiplier,
};
