use std::f64::consts::{FRAC_2_PI, PI};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::spectral::{k_multiplier, sample_power, DepthMode, Grid, PeriodicProfile};

use super::lsq::least_squares;

const MIN_WINDOW_POINTS: usize = 8;

/// Leading coefficient of `|u|^{p-1}` in `K_inf |u|^p`: `-p tan(pi p / 2)`.
pub fn predicted_action_coefficient(p: f64) -> Result<f64> {
    check_power(p)?;
    Ok(-p * (0.5 * PI * p).tan())
}

/// The regime-specific closed forms: `-p tan(pi p/2)` on `(0, 1)` and
/// `p cot((p - 1) pi / 2)` on `(1, 2)`.
pub fn one_sided_action_coefficient(p: f64) -> Result<f64> {
    check_power(p)?;
    Ok(if p < 1.0 { -p * (0.5 * PI * p).tan() } else { p / (0.5 * PI * (p - 1.0)).tan() })
}

fn check_power(p: f64) -> Result<()> {
    if p == 1.0 {
        return Err(Error::LogCase);
    }
    if !(p > 0.0 && p < 2.0) {
        return Err(invalid(format!("power must lie in (0, 1) or (1, 2), got {p}")));
    }
    Ok(())
}

/// Checks `10 du <= lo < hi <= 0.5` and that at least eight positive grid points fall inside.
pub fn validate_window(grid: Grid, window: (f64, f64)) -> Result<Vec<usize>> {
    let (lo, hi) = window;
    let floor = 10.0 * grid.spacing();
    if !(lo >= floor * (1.0 - 1e-12) && lo < hi && hi <= 0.5) {
        return Err(invalid(format!(
            "fit window ({lo}, {hi}) must satisfy {floor:.3e} <= lo < hi <= 0.5 at N = {}",
            grid.len()
        )));
    }
    let idx = grid.positive_window_indices(lo, hi);
    if idx.len() < MIN_WINDOW_POINTS {
        return Err(invalid(format!(
            "fit window ({lo}, {hi}) holds {} grid points; at least {MIN_WINDOW_POINTS} needed",
            idx.len()
        )));
    }
    Ok(idx)
}

fn k_inf_of_power(p: f64, grid: Grid) -> Result<PeriodicProfile> {
    k_multiplier(DepthMode::Infinite, grid.len())?.apply(&sample_power(p, grid, false)?)
}

/// Fits `c1 |u|^{p-1} + c0 + c2 u^2 + c4 u^4` to `K_inf |u|^p` over the window and returns `c1`.
///
/// The even polynomial terms absorb the smooth part of the response, which
/// otherwise biases `c1` by about 1% when `p - 1` is close to 1.
pub fn measured_action_coefficient(p: f64, n: usize, window: (f64, f64)) -> Result<f64> {
    check_power(p)?;
    let grid = Grid::new(n)?;
    let idx = validate_window(grid, window)?;
    let k = k_inf_of_power(p, grid)?;
    let u: Vec<f64> = idx.iter().map(|&j| grid.point(j)).collect();
    let y: Vec<f64> = idx.iter().map(|&j| k.values()[j]).collect();
    let basis = vec![
        u.iter().map(|u| u.powf(p - 1.0)).collect(),
        vec![1.0; u.len()],
        u.iter().map(|u| u * u).collect(),
        u.iter().map(|u| u.powi(4)).collect(),
    ];
    Ok(least_squares(&basis, &y)?.coefficients[0])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogCaseReport {
    pub n: usize,
    pub window: (f64, f64),
    /// Fitted `a` in `K_inf |u| ~ a ln|u| + b`.
    pub log_coefficient: f64,
    pub expected: f64,
    pub relative_error: f64,
    /// Fitted `ln|u|` coefficient of `K_inf u^2` (with a constant and `u^2` term).
    pub smooth_log_coefficient: f64,
}

pub fn log_case_check(n: usize, window: (f64, f64)) -> Result<LogCaseReport> {
    let grid = Grid::new(n)?;
    let idx = validate_window(grid, window)?;
    let u: Vec<f64> = idx.iter().map(|&j| grid.point(j)).collect();
    let logs: Vec<f64> = u.iter().map(|u| u.ln()).collect();
    let ones = vec![1.0; u.len()];

    let k1 = k_inf_of_power(1.0, grid)?;
    let y1: Vec<f64> = idx.iter().map(|&j| k1.values()[j]).collect();
    let a = least_squares(&[logs.clone(), ones.clone()], &y1)?.coefficients[0];

    let k2 = k_inf_of_power(2.0, grid)?;
    let y2: Vec<f64> = idx.iter().map(|&j| k2.values()[j]).collect();
    let sq = u.iter().map(|u| u * u).collect();
    let smooth = least_squares(&[logs, ones, sq], &y2)?.coefficients[0];

    Ok(LogCaseReport {
        n,
        window,
        log_coefficient: a,
        expected: FRAC_2_PI,
        relative_error: (a - FRAC_2_PI).abs() / FRAC_2_PI,
        smooth_log_coefficient: smooth,
    })
}
