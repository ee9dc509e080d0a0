use num_complex::Complex64;

use super::fft;
use super::profile::PeriodicProfile;
use crate::error::Result;

/// Padded grid size for quadratic products: the smallest even integer `>= 3N/2`.
pub fn padded_len(n: usize) -> usize {
    let m = (3 * n).div_ceil(2);
    m + m % 2
}

/// Product of two profiles evaluated on a `3N/2`-padded grid and truncated
/// back to the modes `|k| < N/2`.
///
/// For band-limited inputs the result is the exact product with every mode
/// at or above the Nyquist wavenumber removed.
pub fn dealiased_product(f: &PeriodicProfile, g: &PeriodicProfile) -> Result<PeriodicProfile> {
    f.check_same_grid(g)?;
    let n = f.len();
    let m = padded_len(n);
    let fp = pad(&f.coefficients(), m);
    let gp = pad(&g.coefficients(), m);
    let prod: Vec<f64> = fp.iter().zip(&gp).map(|(a, b)| a * b).collect();
    let pc = fft::forward(&prod);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    out[..n / 2].copy_from_slice(&pc[..n / 2]);
    for k in 1..n / 2 {
        out[n - k] = pc[m - k];
    }
    PeriodicProfile::from_coefficients(f.grid(), &out)
}

/// Interpolates onto an `m`-point staggered grid; the Nyquist coefficient is
/// split evenly between `+-N/2`, which reproduces the real interpolant.
fn pad(c: &[Complex64], m: usize) -> Vec<f64> {
    let n = c.len();
    let mut big = vec![Complex64::new(0.0, 0.0); m];
    big[..n / 2].copy_from_slice(&c[..n / 2]);
    for k in 1..n / 2 {
        big[m - k] = c[n - k];
    }
    let nyq = c[n / 2] * 0.5;
    big[n / 2] = nyq;
    big[m - n / 2] = nyq;
    fft::inverse(&big)
}
