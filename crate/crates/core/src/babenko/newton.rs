use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Error, Result};
use crate::spectral::{DepthMode, Grid, PeriodicProfile};

use super::operators::{jacobian_apply_with, residual_with, ProductRule};
use super::state::{Constraint, SolverConfig, WaveState};

/// Pivots below this fraction of the largest one are treated as exact zeros.
const PIVOT_RTOL: f64 = 1e-13;

/// Converged even state in cosine form.
#[derive(Clone, Debug)]
pub struct CoefficientSolution {
    /// `a_0..a_{N/2-1}` with `eta = sum a_n cos(n u)`.
    pub coeffs: Vec<f64>,
    pub speed: f64,
    pub iterations: usize,
    pub residual_norm: f64,
    pub state: WaveState,
}

/// Newton's method on Babenko's equation restricted to even profiles.
///
/// The unknowns are the cosine coefficients of `eta` (plus `c` under
/// [`Constraint::FixedHeight`]), so sine components never appear.
pub fn newton_solve(
    initial: &WaveState,
    constraint: Constraint,
    config: &SolverConfig,
) -> Result<WaveState> {
    if initial.grid().len() != config.n {
        return Err(invalid(format!(
            "state has N = {} but the solver is configured for N = {}",
            initial.grid().len(),
            config.n
        )));
    }
    let coeffs = initial.profile.cosine_coefficients();
    solve_coefficients(initial.grid(), initial.mode, &coeffs, initial.speed, constraint, config)
        .map(|s| s.state)
}

pub fn solve_coefficients(
    grid: Grid,
    mode: DepthMode,
    coeffs: &[f64],
    speed: f64,
    constraint: Constraint,
    config: &SolverConfig,
) -> Result<CoefficientSolution> {
    config.validate()?;
    mode.validate()?;
    let l = grid.cosine_modes();
    if coeffs.len() > l {
        return Err(invalid("too many cosine coefficients for the grid"));
    }
    let target = match constraint {
        Constraint::FixedHeight(s) if !(s.is_finite() && s > 0.0) => {
            return Err(invalid(format!("target height must be positive, got {s}")))
        }
        Constraint::FixedHeight(s) => Some(s),
        Constraint::FixedSpeed => None,
    };
    let rule = ProductRule::from_flag(config.dealias);
    let kappa: Vec<f64> = (0..l).map(|n| mode.symbol(n as i64)).collect();
    let mut a = coeffs.to_vec();
    a.resize(l, 0.0);
    let mut c = speed;
    let mut last = f64::INFINITY;

    for it in 0..=config.max_iters {
        let state = WaveState::from_cosine(grid, &a, c, mode)?;
        let r = residual_with(&state, rule)?;
        let rnorm = r.max_abs();
        let hmis = target.map_or(0.0, |s| odd_sum(&a) * 2.0 - s);
        if !(rnorm.is_finite() && hmis.is_finite()) {
            break;
        }
        last = rnorm.max(hmis.abs());

        // The linearization is factored even at a root so that bifurcation points are reported.
        let jac = match rule {
            ProductRule::Dealiased => cosine_jacobian(&a, &kappa, c, target.is_some()),
            ProductRule::Pointwise => sampled_jacobian(&state, &kappa, &a, target.is_some())?,
        };
        let lu = jac.lu();
        if is_singular(lu.u().diagonal().as_slice()) {
            return Err(Error::SingularJacobian);
        }
        if last <= config.newton_tol {
            return Ok(CoefficientSolution {
                coeffs: a,
                speed: c,
                iterations: it,
                residual_norm: rnorm,
                state,
            });
        }
        if it == config.max_iters {
            break;
        }

        let mut rhs = r.cosine_coefficients();
        if target.is_some() {
            rhs.push(hmis);
        }
        let step = lu.solve(&DVector::from_vec(rhs)).ok_or(Error::SingularJacobian)?;
        for (an, dn) in a.iter_mut().zip(step.iter()) {
            *an -= dn;
        }
        if target.is_some() {
            c -= step[l];
        }
    }
    Err(Error::NoConvergence { iterations: config.max_iters, residual: last })
}

fn odd_sum(a: &[f64]) -> f64 {
    a.iter().skip(1).step_by(2).sum()
}

fn is_singular(pivots: &[f64]) -> bool {
    let big = pivots.iter().fold(0.0f64, |m, p| m.max(p.abs()));
    big == 0.0 || pivots.iter().any(|p| !(p.abs() > PIVOT_RTOL * big))
}

/// Matrix of `g -> f g` on cosine coefficients, truncated to the first `l` modes.
fn product_matrix(f: &[f64]) -> DMatrix<f64> {
    let l = f.len();
    let at = |i: usize| if i < l { f[i] } else { 0.0 };
    DMatrix::from_fn(l, l, |m, k| {
        let mut v = at(k + m);
        if m >= k {
            v += f[m - k];
        }
        if m > 0 && k >= m {
            v += f[k - m];
        }
        0.5 * v
    })
}

/// Exact Jacobian of the dealiased residual in cosine coefficients.
fn cosine_jacobian(a: &[f64], kappa: &[f64], c: f64, with_speed: bool) -> DMatrix<f64> {
    let l = a.len();
    let ka: Vec<f64> = a.iter().zip(kappa).map(|(x, k)| x * k).collect();
    let ma = product_matrix(a);
    let mka = product_matrix(&ka);
    let dim = if with_speed { l + 1 } else { l };
    let mut j = DMatrix::zeros(dim, dim);
    for m in 0..l {
        for k in 0..l {
            j[(m, k)] = -mka[(m, k)] - ma[(m, k)] * (kappa[k] + kappa[m]);
        }
        j[(m, m)] += c * c * kappa[m] - 1.0;
    }
    if with_speed {
        augment(&mut j, &ka, c);
    }
    j
}

/// Jacobian assembled column by column from [`jacobian_apply_with`]; used without dealiasing.
fn sampled_jacobian(
    state: &WaveState,
    kappa: &[f64],
    a: &[f64],
    with_speed: bool,
) -> Result<DMatrix<f64>> {
    let l = kappa.len();
    let grid = state.grid();
    let dim = if with_speed { l + 1 } else { l };
    let mut j = DMatrix::zeros(dim, dim);
    let mut unit = vec![0.0; l];
    for k in 0..l {
        unit[k] = 1.0;
        let dir = PeriodicProfile::from_cosine_coefficients(grid, &unit)?;
        unit[k] = 0.0;
        let col = jacobian_apply_with(state, &dir, ProductRule::Pointwise)?.cosine_coefficients();
        for (m, v) in col.into_iter().enumerate() {
            j[(m, k)] = v;
        }
    }
    if with_speed {
        let ka: Vec<f64> = a.iter().zip(kappa).map(|(x, k)| x * k).collect();
        augment(&mut j, &ka, state.speed);
    }
    Ok(j)
}

/// Speed column `2 c K eta` and the height row `2 sum_{odd n} a_n`.
fn augment(j: &mut DMatrix<f64>, ka: &[f64], c: f64) {
    let l = ka.len();
    for m in 0..l {
        j[(m, l)] = 2.0 * c * ka[m];
        if m % 2 == 1 {
            j[(l, m)] = 2.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::babenko::operators::jacobian_apply;

    #[test]
    fn cosine_jacobian_matches_the_operator() {
        let g = Grid::new(32).unwrap();
        let l = g.cosine_modes();
        let a: Vec<f64> = (0..l).map(|n| 0.3 / (1.0 + (n * n) as f64)).collect();
        for mode in [DepthMode::Infinite, DepthMode::Finite(0.7), DepthMode::Toy] {
            let kappa: Vec<f64> = (0..l).map(|n| mode.symbol(n as i64)).collect();
            let state = WaveState::from_cosine(g, &a, 1.1, mode).unwrap();
            let dense = cosine_jacobian(&a, &kappa, 1.1, false);
            let mut unit = vec![0.0; l];
            for k in 0..l {
                unit[k] = 1.0;
                let dir = PeriodicProfile::from_cosine_coefficients(g, &unit).unwrap();
                unit[k] = 0.0;
                let col = jacobian_apply(&state, &dir).unwrap().cosine_coefficients();
                for m in 0..l {
                    assert!((col[m] - dense[(m, k)]).abs() < 1e-12, "mode {mode} ({m},{k})");
                }
            }
        }
    }

    #[test]
    fn small_amplitude_bifurcation() {
        let g = Grid::new(256).unwrap();
        let init = WaveState::new(
            PeriodicProfile::from_fn(g, |u| 0.001 * u.cos()).unwrap(),
            1.0,
            DepthMode::Infinite,
        )
        .unwrap();
        let cfg = SolverConfig::with_n(256);
        let coeffs = init.profile.cosine_coefficients();
        let sol = solve_coefficients(g, init.mode, &coeffs, 1.0, Constraint::FixedHeight(0.002), &cfg)
            .unwrap();
        assert!(sol.iterations <= 6, "{} iterations", sol.iterations);
        assert!(sol.residual_norm <= 1e-12);
        assert!(sol.speed > 1.0 && sol.speed - 1.0 < 1e-5);
        assert!((2.0 * odd_sum(&sol.coeffs) - 0.002).abs() < 1e-14);
    }

    #[test]
    fn pointwise_products_also_converge() {
        let g = Grid::new(64).unwrap();
        let init = WaveState::new(
            PeriodicProfile::from_fn(g, |u| 0.05 * u.cos()).unwrap(),
            1.0,
            DepthMode::Infinite,
        )
        .unwrap();
        let cfg = SolverConfig { dealias: false, ..SolverConfig::with_n(64) };
        let s = newton_solve(&init, Constraint::FixedHeight(0.1), &cfg).unwrap();
        assert!(residual_with(&s, ProductRule::Pointwise).unwrap().max_abs() <= 1e-12);
    }

    #[test]
    fn trivial_root_away_from_bifurcations() {
        let g = Grid::new(64).unwrap();
        let s = WaveState::flat(g, 0.6, DepthMode::Infinite).unwrap();
        let out = newton_solve(&s, Constraint::FixedSpeed, &SolverConfig::with_n(64)).unwrap();
        assert_eq!(out.profile.max_abs(), 0.0);
    }

    #[test]
    fn flat_states_at_bifurcation_speeds_are_singular() {
        let g = Grid::new(64).unwrap();
        // c^2 |n| = 1 at n = 1 and, for c = 1/2, at n = 4.
        for c in [1.0, 0.5] {
            let s = WaveState::flat(g, c, DepthMode::Infinite).unwrap();
            let err = newton_solve(&s, Constraint::FixedSpeed, &SolverConfig::with_n(64));
            assert!(matches!(err, Err(Error::SingularJacobian)), "c = {c}");
        }
    }

    #[test]
    fn grid_size_must_match_config() {
        let s = WaveState::flat(Grid::new(32).unwrap(), 0.6, DepthMode::Infinite).unwrap();
        assert!(newton_solve(&s, Constraint::FixedSpeed, &SolverConfig::with_n(64)).is_err());
    }

    #[test]
    fn iteration_budget_is_enforced() {
        let g = Grid::new(64).unwrap();
        let init = WaveState::new(
            PeriodicProfile::from_fn(g, |u| 0.1 * u.cos()).unwrap(),
            1.0,
            DepthMode::Infinite,
        )
        .unwrap();
        let cfg = SolverConfig { max_iters: 1, ..SolverConfig::with_n(64) };
        match newton_solve(&init, Constraint::FixedHeight(0.2), &cfg) {
            Err(Error::NoConvergence { iterations, residual }) => {
                assert_eq!(iterations, 1);
                assert!(residual > 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
