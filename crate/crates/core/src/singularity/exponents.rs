use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The root `mu = 2/3` of [`grant_lhs`], known in closed form.
pub const GRANT_KNOWN_ROOT: f64 = 2.0 / 3.0;

const POLE_GUARD: f64 = 1e-8;
const BRACKET_GUARD: f64 = 1e-6;
const ROOT_TOL: f64 = 1e-12;
const SCAN_CELLS: usize = 4000;

/// `(mu + 2/3) tan(pi mu/2 + pi/3) + mu tan(pi mu/2) + 2/sqrt(3)`.
pub fn grant_lhs(mu: f64) -> Result<f64> {
    let distance = pole_distance(mu);
    if !(distance > POLE_GUARD) {
        return Err(Error::PoleProximity { mu, distance });
    }
    Ok((mu + 2.0 / 3.0) * (0.5 * PI * mu + PI / 3.0).tan()
        + mu * (0.5 * PI * mu).tan()
        + 2.0 / 3f64.sqrt())
}

/// Distance from `mu` to the nearest tangent pole, `mu = 1/3` or `mu = 1` (mod 2).
fn pole_distance(mu: f64) -> f64 {
    let to_lattice = |x: f64| {
        let r = x.rem_euclid(2.0);
        r.min(2.0 - r)
    };
    to_lattice(mu - 1.0 / 3.0).min(to_lattice(mu - 1.0))
}

/// `1 + 2 cos(pi beta)`, whose zero fixes the leading crest exponent.
pub fn beta_equation(beta: f64) -> f64 {
    1.0 + 2.0 * (PI * beta).cos()
}

/// Coefficient of `|u|^{mu - 1/3}` left after inserting the two-term crest
/// expansion `A|u|^{2/3} + B|u|^mu` into the fixed-point equation.
pub fn subleading_balance(a: f64, b: f64, mu: f64) -> f64 {
    let s3 = 3f64.sqrt();
    let first = (mu + 2.0 / 3.0) * (PI * mu / 2.0 + PI / 3.0).tan();
    let second = mu * (PI * mu / 2.0).tan();
    -a * b * (first + second + 2.0 / s3)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Exponents {
    /// Root of `1 + 2 cos(pi beta)` in `(1/2, 1)`.
    pub beta_root: f64,
    /// Roots of the same equation in `(0, 1/2)` (expected: none).
    pub beta_roots_below_half: Vec<f64>,
    pub grant_known_root: f64,
    /// Roots of [`grant_lhs`] in `(2/3, 2)`, excluding the known one.
    pub grant_roots: Vec<f64>,
}

pub fn find_exponents() -> Exponents {
    let beta_root = bisect(beta_equation, 0.5, 1.0).expect("1 + 2cos(pi b) changes sign on (1/2, 1)");
    let beta_roots_below_half = scan_roots(beta_equation, 1e-9, 0.5 - 1e-9);
    let grant = |mu: f64| grant_lhs(mu).expect("brackets avoid the poles");
    let mut grant_roots = scan_roots(grant, GRANT_KNOWN_ROOT + BRACKET_GUARD, 1.0 - BRACKET_GUARD);
    grant_roots.extend(scan_roots(grant, 1.0 + BRACKET_GUARD, 2.0));
    Exponents { beta_root, beta_roots_below_half, grant_known_root: GRANT_KNOWN_ROOT, grant_roots }
}

fn scan_roots(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Vec<f64> {
    let h = (hi - lo) / SCAN_CELLS as f64;
    let mut roots = Vec::new();
    let mut a = lo;
    let mut fa = f(a);
    for i in 1..=SCAN_CELLS {
        let b = if i == SCAN_CELLS { hi } else { lo + i as f64 * h };
        let fb = f(b);
        if fa.is_finite() && fb.is_finite() && fa * fb <= 0.0 {
            if let Some(r) = bisect(&f, a, b) {
                if roots.last().is_none_or(|&last: &f64| (r - last).abs() > 1e-9) {
                    roots.push(r);
                }
            }
        }
        a = b;
        fa = fb;
    }
    roots
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> Option<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa * fb > 0.0 {
        return None;
    }
    while b - a > ROOT_TOL {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    Some(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_root_and_poles() {
        assert!(grant_lhs(2.0 / 3.0).unwrap().abs() <= 1e-12);
        assert!(grant_lhs(1.469).unwrap().abs() <= 0.02);
        for mu in [1.0, 1.0 / 3.0, 3.0, -1.0, 7.0 / 3.0, 1.0 + 5e-9] {
            assert!(matches!(grant_lhs(mu), Err(Error::PoleProximity { .. })), "{mu}");
        }
        assert!(grant_lhs(1.0 + 1e-6).is_ok());
    }

    #[test]
    fn exponents() {
        let e = find_exponents();
        assert!((e.beta_root - 2.0 / 3.0).abs() <= 1e-12);
        assert!(e.beta_roots_below_half.is_empty());
        assert_eq!(e.grant_roots.len(), 1, "{:?}", e.grant_roots);
        assert_eq!(format!("{:.3}", e.grant_roots[0]), "1.469");
        assert!(e.grant_roots.iter().all(|&r| (r - 1.0).abs() > 1e-6));
    }

    #[test]
    fn balance_is_grant_lhs_scaled() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let (a, b, mu) = (rng.gen_range(0.1..3.0), rng.gen_range(-2.0..2.0), rng.gen_range(0.67..2.0));
            let Ok(g) = grant_lhs(mu) else { continue };
            let lhs = subleading_balance(a, b, mu);
            assert!((lhs + a * b * g).abs() <= 1e-12 * (1.0 + lhs.abs()));
        }
    }
}
