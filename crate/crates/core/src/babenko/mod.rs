//! Babenko's equation `(c^2 K - 1) eta - eta K eta - K(eta^2)/2 = 0` and the
//! machinery to solve it along a branch of Stokes waves.

mod continuation;
mod diagnostics;
mod newton;
mod operators;
mod state;
mod surface;

pub use continuation::{
    continue_branch, continue_from_entry, seed_entry, BranchEntry, StepControl, StopReason,
    WaveBranch,
};
pub use diagnostics::{crest_height, crest_to_trough, diagnose, Diagnostics};
pub use newton::{newton_solve, solve_coefficients, CoefficientSolution};
pub use operators::{
    deviation, fixed_point_map, jacobian_apply, jacobian_apply_with, residual, residual_with,
    ProductRule,
};
pub use state::{Constraint, SolverConfig, WaveState};
pub use surface::{physical_surface, PhysicalSurface, DEFAULT_CREST_WINDOW};
