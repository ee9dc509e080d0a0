use crate::error::{invalid, Result};
use crate::spectral::{hilbert, PeriodicProfile};

use super::state::WaveState;

/// Default horizontal reach (in `u`) of the crest-angle secants.
pub const DEFAULT_CREST_WINDOW: f64 = 0.03;

/// Free surface in physical coordinates, `x = u - H[eta]`, `y = eta`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalSurface {
    pub u: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Interior crest angle in degrees at [`DEFAULT_CREST_WINDOW`].
    pub crest_angle_deg: f64,
}

pub fn physical_surface(state: &WaveState) -> Result<PhysicalSurface> {
    if !state.mode.is_deep() {
        return Err(invalid("physical reconstruction is implemented for deep water only"));
    }
    let eta: &PeriodicProfile = &state.profile;
    let h_eta = hilbert(eta.len())?.apply(eta)?;
    let u = eta.grid().points();
    let x = u.iter().zip(h_eta.values()).map(|(u, h)| u - h).collect();
    let mut surface = PhysicalSurface { u, x, y: eta.values().to_vec(), crest_angle_deg: 180.0 };
    surface.crest_angle_deg = surface.crest_angle_at(DEFAULT_CREST_WINDOW);
    Ok(surface)
}

impl PhysicalSurface {
    /// Interior angle at the crest between the two one-sided secants joining
    /// the samples next to `u = 0` with the first samples at `|u| >= window`.
    pub fn crest_angle_at(&self, window: f64) -> f64 {
        let n = self.u.len();
        let right0 = n / 2;
        let left0 = right0 - 1;
        let right = (right0 + 1..n).find(|&j| self.u[j] >= window).unwrap_or(n - 1).max(right0 + 1);
        let left = n - 1 - right;
        let descent = |from: usize, to: usize| {
            let dx = (self.x[to] - self.x[from]).abs();
            let dy = self.y[from] - self.y[to];
            dy.atan2(dx)
        };
        let total = descent(right0, right) + descent(left0, left);
        180.0 - total.to_degrees()
    }
}
