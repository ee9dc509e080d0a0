use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::spectral::{hilbert, sample_power, Grid, PeriodicProfile};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub nu: f64,
    pub signed: bool,
    pub u0: f64,
    /// Coefficient of the subtracted singular part.
    pub predicted_coefficient: f64,
    pub resolutions: Vec<usize>,
    /// Per resolution: `sup |F_nu|` over `|u| < u0`.
    pub remainder_sup: Vec<f64>,
    /// Per resolution: largest first divided difference of `F_nu` over `|u| < u0`.
    pub difference_sup: Vec<f64>,
    /// Last `remainder_sup` over the previous one.
    pub convergence_ratio: f64,
}

/// `-cot(pi nu/2)` for `|u|^{nu-1}`; `tan(pi nu/2)` for `|u|^{nu-1} sgn u`.
pub fn predicted_lemma_coefficient(nu: f64, signed: bool) -> f64 {
    let t = (0.5 * PI * nu).tan();
    if signed {
        t
    } else {
        -1.0 / t
    }
}

/// Samples `H[|u|^{nu-1}]` (or of the signed power) minus its predicted
/// singular part, `-cot(pi nu/2)|u|^{nu-1} sgn u` (or `tan(pi nu/2)|u|^{nu-1}`).
///
/// The transform is evaluated as the exact transform of a periodic function
/// with the same singularity plus the discrete transform of a milder remainder:
/// with `z = 1 - e^{iu}`, each `z^{-b} = U + iV` is the boundary value of a
/// function analytic in the disc with value 1 at the centre, so `H U = -V` and
/// `H V = U - 1`; `b = 1 - nu` carries the leading singularity.
pub fn lemma_remainder_report(
    nu: f64,
    signed: bool,
    u0: f64,
    resolutions: &[usize],
) -> Result<LemmaReport> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(invalid(format!("nu must lie in (0, 1), got {nu}")));
    }
    if !(u0 > 0.0 && u0 < PI) {
        return Err(invalid(format!("u0 must lie in (0, pi), got {u0}")));
    }
    if resolutions.is_empty() || resolutions.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("resolutions must be nonempty and strictly increasing"));
    }
    let coefficient = predicted_lemma_coefficient(nu, signed);
    let mut remainder_sup = Vec::with_capacity(resolutions.len());
    let mut difference_sup = Vec::with_capacity(resolutions.len());
    for &n in resolutions {
        let grid = Grid::new(n)?;
        let f = remainder(nu, signed, coefficient, grid)?;
        let idx = grid.window_indices(0.0, u0 * (1.0 - 1e-15));
        let sup = idx.iter().map(|&j| f[j].abs()).fold(0.0, f64::max);
        let h = grid.spacing();
        let diff = idx
            .windows(2)
            .filter(|w| w[1] == w[0] + 1)
            .map(|w| ((f[w[1]] - f[w[0]]) / h).abs())
            .fold(0.0, f64::max);
        remainder_sup.push(sup);
        difference_sup.push(diff);
    }
    let k = remainder_sup.len();
    let convergence_ratio = if k >= 2 { remainder_sup[k - 1] / remainder_sup[k - 2] } else { 1.0 };
    Ok(LemmaReport {
        nu,
        signed,
        u0,
        predicted_coefficient: coefficient,
        resolutions: resolutions.to_vec(),
        remainder_sup,
        difference_sup,
        convergence_ratio,
    })
}

fn remainder(nu: f64, signed: bool, coefficient: f64, grid: Grid) -> Result<Vec<f64>> {
    let a = 1.0 - nu;
    // Re and Im of (1 - e^{iu})^{-b}.
    let pair = |b: f64, u: f64| {
        let r = (2.0 * (0.5 * u).sin()).abs().powf(-b);
        let theta = 0.5 * (u - PI.copysign(u));
        (r * (b * theta).cos(), -r * (b * theta).sin())
    };
    // The second pair cancels the |u|^nu term the first one brings along,
    // leaving an O(|u|^{nu+1}) remainder for the discrete transform.
    let lead = if signed { 1.0 / (0.5 * PI * nu).cos() } else { 1.0 / (0.5 * PI * nu).sin() };
    let weights = [(a, lead), (a - 1.0, -0.5 * a * lead)];
    let s = sample_power(nu - 1.0, grid, signed)?;
    let pts = grid.points();
    let (model, h_model): (Vec<f64>, Vec<f64>) = pts
        .iter()
        .map(|&u| {
            weights.iter().fold((0.0, 0.0), |(m, hm), &(b, w)| {
                let (uu, vv) = pair(b, u);
                if signed {
                    (m + w * vv, hm + w * (uu - 1.0))
                } else {
                    (m + w * uu, hm - w * vv)
                }
            })
        })
        .unzip();
    let rest = s.sub(&PeriodicProfile::new(grid, model)?)?;
    let h_rest = hilbert(grid.len())?.apply(&rest)?;
    Ok(pts
        .iter()
        .enumerate()
        .map(|(j, &u)| {
            let hs = h_model[j] + h_rest.values()[j];
            let sing = u.abs().powf(nu - 1.0);
            let predicted = coefficient * if signed { sing } else { sing.copysign(u) };
            hs - predicted
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients() {
        assert!((predicted_lemma_coefficient(0.5, false) + 1.0).abs() < 1e-15);
        assert!((predicted_lemma_coefficient(2.0 / 3.0, true) - 3f64.sqrt()).abs() < 1e-14);
    }

    fn remainder_at(nu: f64, signed: bool, n: usize, u: f64) -> f64 {
        let grid = Grid::new(n).unwrap();
        let f = remainder(nu, signed, predicted_lemma_coefficient(nu, signed), grid).unwrap();
        let j = grid.positive_window_indices(u, PI)[0];
        let (u1, u0) = (grid.point(j), grid.point(j - 1));
        f[j - 1] + (f[j] - f[j - 1]) * (u - u0) / (u1 - u0)
    }

    #[test]
    fn remainder_converges_pointwise() {
        for (nu, signed) in [(0.5, false), (1.0 / 3.0, true), (2.0 / 3.0, false)] {
            let coarse = remainder_at(nu, signed, 2048, 0.5);
            let fine = remainder_at(nu, signed, 16384, 0.5);
            assert!((coarse - fine).abs() < 1e-4, "nu {nu}: {coarse} vs {fine}");
        }
    }

    #[test]
    fn argument_checks() {
        assert!(lemma_remainder_report(1.0, false, 1.0, &[64]).is_err());
        assert!(lemma_remainder_report(0.5, false, 4.0, &[64]).is_err());
        assert!(lemma_remainder_report(0.5, false, 1.0, &[128, 64]).is_err());
    }

    #[test]
    fn remainder_is_stable_under_refinement() {
        for signed in [false, true] {
            let r = lemma_remainder_report(0.5, signed, 1.0, &[512, 2048]).unwrap();
            assert!((0.8..=1.2).contains(&r.convergence_ratio), "{r:?}");
        }
    }
}
