//! Principal-value quadrature of the periodic Hilbert transform, written as
//! a sum over periodic images of a Cauchy kernel. Independent of the symbol
//! route in [`super::multiplier`]; used to cross-check it.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::fft;
use super::profile::PeriodicProfile;
use crate::error::{invalid, Result};

/// `(1/pi) sum_{|n| <= terms} p.v. \int f(u') / (u' - u + 2 pi n) du'`.
///
/// The central image uses singularity subtraction `f(u') -> f(u') - f(u)`,
/// whose subtracted part integrates in closed form; the remaining integrand
/// is smooth and is summed with the midpoint rule on the profile's grid.
/// The image tail beyond `terms` is replaced by its large-`n` expansion, so
/// the truncation error decays like `terms^-7` rather than `terms^-1`.
pub fn hilbert_pv_quadrature(f: &PeriodicProfile, u: f64, terms: usize) -> Result<f64> {
    if !(u > -PI && u < PI) {
        return Err(invalid(format!("evaluation point {u} outside (-pi, pi)")));
    }
    if terms == 0 {
        return Err(invalid("at least one image per side is required"));
    }
    let grid = f.grid();
    let du = grid.spacing();
    let coeffs = f.coefficients();
    let (fu, dfu) = value_and_slope(&coeffs, u);

    let mut sum = 0.0;
    for (j, &fj) in f.values().iter().enumerate() {
        let t = grid.point(j) - u;
        if t.abs() < 1e-14 {
            // removable singularity of the central image
            sum += dfu + (fj - fu) * image_kernel(t, terms);
            continue;
        }
        sum += (fj - fu) * (1.0 / t + image_kernel(t, terms));
    }
    let integral = du * sum + fu * kernel_integral(u, terms);
    Ok(integral / PI)
}

/// Images `0 < |m| <= terms` plus the tail estimate, at offset `t`.
fn image_kernel(t: f64, terms: usize) -> f64 {
    let two_pi = 2.0 * PI;
    let mut s = 0.0;
    // pair m and -m: 1/(t + 2 pi m) + 1/(t - 2 pi m)
    for m in (1..=terms).rev() {
        let w = two_pi * m as f64;
        s += 2.0 * t / (t * t - w * w);
    }
    s + tail(t, terms)
}

/// `sum_{|m| > T} 1/(t + 2 pi m) = -(t / 2pi^2) sum_{m > T} 1/(m^2 - a^2)`, `a = t/2pi`,
/// expanded in powers of `a^2`.
fn tail(t: f64, terms: usize) -> f64 {
    let a2 = (t / (2.0 * PI)).powi(2);
    let mut series = 0.0;
    let mut ak = 1.0;
    for k in 0..3 {
        series += ak * zeta_tail(2.0 * k as f64 + 2.0, terms);
        ak *= a2;
    }
    -t / (2.0 * PI * PI) * series
}

/// `sum_{m > T} m^-s` by Euler-Maclaurin.
fn zeta_tail(s: f64, terms: usize) -> f64 {
    let t = terms as f64;
    t.powf(1.0 - s) / (s - 1.0) - 0.5 * t.powf(-s) + s * t.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * t.powf(-s - 3.0) / 720.0
}

/// Exact `p.v. \int_{-pi}^{pi}` of the truncated kernel plus its tail.
fn kernel_integral(u: f64, terms: usize) -> f64 {
    let two_pi = 2.0 * PI;
    let mut s = ((PI - u) / (PI + u)).ln();
    for m in 1..=terms {
        let w = two_pi * m as f64;
        s += ((PI - u + w) / (-PI - u + w)).abs().ln();
        s += ((PI - u - w) / (-PI - u - w)).abs().ln();
    }
    // \int t^{2k+1} over [-pi - u, pi - u]
    let a2_scale = 1.0 / (2.0 * PI).powi(2);
    let mut tail_int = 0.0;
    let mut scale = 1.0;
    for k in 0..3 {
        let p = 2 * k + 2;
        let moment = ((PI - u).powi(p) - (PI + u).powi(p)) / p as f64;
        tail_int += scale * zeta_tail(p as f64, terms) * moment;
        scale *= a2_scale;
    }
    s - tail_int / (2.0 * PI * PI)
}

fn value_and_slope(coeffs: &[Complex64], u: f64) -> (f64, f64) {
    let n = coeffs.len();
    let mut v = 0.0;
    let mut d = 0.0;
    for (k, c) in coeffs.iter().enumerate() {
        let m = fft::wavenumber(k, n) as f64;
        let z = c * Complex64::from_polar(1.0, m * u);
        v += z.re;
        d += (z * Complex64::new(0.0, m)).re;
    }
    (v, d)
}
