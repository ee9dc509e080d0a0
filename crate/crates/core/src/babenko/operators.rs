use crate::error::{invalid, Result};
use crate::spectral::{dealiased_product, k_multiplier, DepthMode, PeriodicProfile};

use super::state::WaveState;

/// How quadratic terms are formed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ProductRule {
    /// Zero-padded `3N/2` products truncated back to `|k| < N/2`.
    #[default]
    Dealiased,
    /// Plain pointwise products on the grid.
    Pointwise,
}

impl ProductRule {
    pub fn from_flag(dealias: bool) -> Self {
        if dealias {
            ProductRule::Dealiased
        } else {
            ProductRule::Pointwise
        }
    }

    pub fn product(self, f: &PeriodicProfile, g: &PeriodicProfile) -> Result<PeriodicProfile> {
        match self {
            ProductRule::Dealiased => dealiased_product(f, g),
            ProductRule::Pointwise => f.mul_pointwise(g),
        }
    }
}

/// `(c^2 K - 1) eta - eta K eta - K(eta^2)/2`, with dealiased products.
pub fn residual(state: &WaveState) -> Result<PeriodicProfile> {
    residual_with(state, ProductRule::Dealiased)
}

pub fn residual_with(state: &WaveState, rule: ProductRule) -> Result<PeriodicProfile> {
    let k = state.k_operator()?;
    let eta = &state.profile;
    let c2 = state.speed * state.speed;
    let k_eta = k.apply(eta)?;
    let eta_k_eta = rule.product(eta, &k_eta)?;
    let k_eta2 = k.apply(&rule.product(eta, eta)?)?;
    let vals = eta
        .values()
        .iter()
        .zip(k_eta.values())
        .zip(eta_k_eta.values())
        .zip(k_eta2.values())
        .map(|(((e, ke), eke), ke2)| c2 * ke - e - eke - 0.5 * ke2)
        .collect();
    PeriodicProfile::new(eta.grid(), vals)
}

/// Deviation from the Bernoulli crest level, `c^2/2 - eta`.
pub fn deviation(state: &WaveState) -> PeriodicProfile {
    state.profile.scale(-1.0).shift(0.5 * state.speed * state.speed)
}

/// Deep-water fixed-point map `T dev = c^2/2 + K(dev^2)/2 + dev K dev`.
///
/// `dev - T dev` equals the residual of the state `c^2/2 - dev`.
pub fn fixed_point_map(dev: &PeriodicProfile, c: f64) -> Result<PeriodicProfile> {
    let k = k_multiplier(DepthMode::Infinite, dev.len())?;
    let k_dev = k.apply(dev)?;
    let half_k_sq = k.apply(&dealiased_product(dev, dev)?)?.scale(0.5);
    let dev_k_dev = dealiased_product(dev, &k_dev)?;
    Ok(half_k_sq.add(&dev_k_dev)?.shift(0.5 * c * c))
}

/// Directional derivative of [`residual`] at `state` along `direction`:
/// `(c^2 K - 1) d - d K eta - eta K d - K(eta d)`.
pub fn jacobian_apply(state: &WaveState, direction: &PeriodicProfile) -> Result<PeriodicProfile> {
    jacobian_apply_with(state, direction, ProductRule::Dealiased)
}

pub fn jacobian_apply_with(
    state: &WaveState,
    direction: &PeriodicProfile,
    rule: ProductRule,
) -> Result<PeriodicProfile> {
    if direction.grid() != state.grid() {
        return Err(invalid("direction and state live on different grids"));
    }
    let k = state.k_operator()?;
    let eta = &state.profile;
    let d = direction;
    let c2 = state.speed * state.speed;
    let k_eta = k.apply(eta)?;
    let k_d = k.apply(d)?;
    let t1 = rule.product(d, &k_eta)?;
    let t2 = rule.product(eta, &k_d)?;
    let t3 = k.apply(&rule.product(eta, d)?)?;
    let vals = (0..d.len())
        .map(|j| {
            c2 * k_d.values()[j] - d.values()[j] - t1.values()[j] - t2.values()[j] - t3.values()[j]
        })
        .collect();
    PeriodicProfile::new(eta.grid(), vals)
}
