use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::spectral::PeriodicProfile;

use super::operators::residual;
use super::state::WaveState;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Max-norm of the dealiased residual.
    pub residual_norm: f64,
    /// `(1/2 pi) \oint eta (1 + K eta) du`.
    pub mean_zero_value: f64,
    /// `c^2/2 - max eta`.
    pub crest_gap: f64,
    /// Share of the non-constant spectral energy held by the top 10% of modes.
    pub tail_fraction: f64,
}

pub fn diagnose(state: &WaveState) -> Result<Diagnostics> {
    let eta = &state.profile;
    let residual_norm = residual(state)?.max_abs();
    let k_eta = state.k_operator()?.apply(eta)?;
    // Trapezoidal means are exact for products of the resolved modes.
    let mean_zero_value = eta.mean() + eta.mul_pointwise(&k_eta)?.mean();
    let peak = eta.max().max(crest_height(eta));
    let crest_gap = 0.5 * state.speed * state.speed - peak;
    Ok(Diagnostics {
        residual_norm,
        mean_zero_value,
        crest_gap,
        tail_fraction: tail_fraction(eta),
    })
}

/// `eta(0)` from the trigonometric interpolant.
pub fn crest_height(profile: &PeriodicProfile) -> f64 {
    profile.evaluate(0.0)
}

/// `eta(0) - eta(pi)`, the continuation parameter of an even wave.
pub fn crest_to_trough(profile: &PeriodicProfile) -> f64 {
    profile.evaluate(0.0) - profile.evaluate(PI)
}

fn tail_fraction(profile: &PeriodicProfile) -> f64 {
    let c = profile.coefficients();
    let n = c.len();
    let half = n / 2;
    let cutoff = (0.9 * half as f64).floor() as usize + 1;
    let mut total = 0.0;
    let mut tail = 0.0;
    for m in 1..=half {
        let e = if m == half { c[m].norm_sqr() } else { c[m].norm_sqr() + c[n - m].norm_sqr() };
        total += e;
        if m >= cutoff {
            tail += e;
        }
    }
    if total > 0.0 {
        (tail / total).clamp(0.0, 1.0)
    } else {
        0.0
    }
}
