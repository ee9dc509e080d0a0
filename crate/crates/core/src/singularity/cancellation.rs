use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::spectral::{dealiased_product, k_multiplier, sample_power, DepthMode, Grid, PeriodicProfile};

use super::action::validate_window;
use super::lsq::least_squares;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CancellationReport {
    pub amplitude: f64,
    pub n: usize,
    pub window: (f64, f64),
    /// `2 A^2 / sqrt(3)`.
    pub scale: f64,
    /// `|u|^{1/3}` coefficient of `f K_inf f`.
    pub interaction: f64,
    /// `|u|^{1/3}` coefficient of `K_inf(f^2)/2`.
    pub half_k_square: f64,
    /// `|u|^{1/3}` coefficient of their sum.
    pub sum: f64,
}

impl CancellationReport {
    pub fn interaction_error(&self) -> f64 {
        (self.interaction + self.scale).abs() / self.scale
    }

    pub fn half_k_square_error(&self) -> f64 {
        (self.half_k_square - self.scale).abs() / self.scale
    }

    pub fn sum_fraction(&self) -> f64 {
        self.sum.abs() / self.scale
    }
}

/// Fits `|u|^{1/3}` coefficients of the two quadratic terms of the
/// fixed-point map on `f = A|u|^{2/3}`, over `(10 du, 0.1)`.
pub fn cancellation_check(amplitude: f64, n: usize) -> Result<CancellationReport> {
    if !(amplitude > 0.0 && amplitude.is_finite()) {
        return Err(invalid("amplitude must be positive"));
    }
    if n < 4096 {
        return Err(invalid(format!("cancellation check needs N >= 4096, got {n}")));
    }
    let grid = Grid::new(n)?;
    let window = (10.0 * grid.spacing(), 0.1);
    let idx = validate_window(grid, window)?;
    let k = k_multiplier(DepthMode::Infinite, n)?;
    let f = sample_power(2.0 / 3.0, grid, false)?.scale(amplitude);
    let interaction = dealiased_product(&f, &k.apply(&f)?)?;
    let half_k_square = k.apply(&dealiased_product(&f, &f)?)?.scale(0.5);
    let total = interaction.add(&half_k_square)?;

    let u: Vec<f64> = idx.iter().map(|&j| grid.point(j)).collect();
    let basis = vec![
        u.iter().map(|u| u.powf(1.0 / 3.0)).collect::<Vec<_>>(),
        vec![1.0; u.len()],
        u.iter().map(|u| u.powf(2.0 / 3.0)).collect(),
        u.iter().map(|u| u * u).collect(),
    ];
    let fit = |p: &PeriodicProfile| -> Result<f64> {
        let y: Vec<f64> = idx.iter().map(|&j| p.values()[j]).collect();
        Ok(least_squares(&basis, &y)?.coefficients[0])
    };
    Ok(CancellationReport {
        amplitude,
        n,
        window,
        scale: 2.0 * amplitude * amplitude / 3f64.sqrt(),
        interaction: fit(&interaction)?,
        half_k_square: fit(&half_k_square)?,
        sum: fit(&total)?,
    })
}
