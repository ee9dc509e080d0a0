//! Fixtures shared by the criterion benches.

use stokeslab_core::babenko::{seed_entry, SolverConfig};
use stokeslab_core::{DepthMode, Grid, PeriodicProfile, WaveState};

/// A smooth even profile with a geometric spectrum.
pub fn smooth_profile(n: usize) -> PeriodicProfile {
    let grid = Grid::new(n).expect("even grid size");
    PeriodicProfile::from_fn(grid, |u| {
        (1..=12).map(|k| 0.3f64.powi(k) * (k as f64 * u).cos()).sum()
    })
    .expect("finite samples")
}

/// Converged deep-water wave of crest-to-trough height `s`.
pub fn converged_state(n: usize, s: f64) -> WaveState {
    let grid = Grid::new(n).expect("even grid size");
    seed_entry(grid, DepthMode::Infinite, s, &SolverConfig::with_n(n))
        .expect("small-amplitude solve converges")
        .state
}
