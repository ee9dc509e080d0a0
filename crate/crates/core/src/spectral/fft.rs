//! Thin wrappers over `rustfft` with the staggered-grid phase convention.

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Signed wavenumber of FFT bin `k`; the Nyquist bin maps to `+n/2`.
#[inline]
pub(crate) fn wavenumber(k: usize, n: usize) -> i64 {
    if k <= n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

/// FFT bin holding wavenumber `m` (requires `|m| <= n/2`).
#[inline]
pub(crate) fn bin(m: i64, n: usize) -> usize {
    if m >= 0 {
        m as usize
    } else {
        (n as i64 + m) as usize
    }
}

/// `exp(i m u_0)` with `u_0 = -pi + pi/n`, split as `(-1)^m exp(i pi m / n)`
/// so the phase argument stays small.
#[inline]
pub(crate) fn shift_phase(m: i64, n: usize) -> Complex64 {
    let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Complex64::from_polar(sign, PI * m as f64 / n as f64)
}

pub(crate) fn fft_in_place(buf: &mut [Complex64]) {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()).process(buf));
}

pub(crate) fn ifft_in_place(buf: &mut [Complex64]) {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(buf.len()).process(buf));
}

/// Phase-corrected Fourier coefficients of grid samples (FFT bin order).
pub(crate) fn forward(values: &[f64]) -> Vec<Complex64> {
    let n = values.len();
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_in_place(&mut buf);
    let scale = 1.0 / n as f64;
    for (k, c) in buf.iter_mut().enumerate() {
        *c *= shift_phase(wavenumber(k, n), n).conj() * scale;
    }
    buf
}

/// Grid samples from phase-corrected coefficients; imaginary parts dropped.
pub(crate) fn inverse(coeffs: &[Complex64]) -> Vec<f64> {
    let n = coeffs.len();
    let mut buf: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| c * shift_phase(wavenumber(k, n), n))
        .collect();
    ifft_in_place(&mut buf);
    buf.into_iter().map(|c| c.re).collect()
}
