use num_complex::Complex64;

use super::fft;
use super::grid::Grid;
use crate::error::{invalid, Result};

/// Real samples of a `2 pi`-periodic function on a staggered [`Grid`].
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicProfile {
    grid: Grid,
    values: Vec<f64>,
}

impl PeriodicProfile {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(invalid(format!(
                "profile has {} samples but the grid has {}",
                values.len(),
                grid.len()
            )));
        }
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(invalid(format!("sample {j} is not finite")));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.points().into_iter().map(f).collect())
    }

    pub fn constant(grid: Grid, value: f64) -> Self {
        Self { grid, values: vec![value; grid.len()] }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self::constant(grid, 0.0)
    }

    #[inline]
    pub fn grid(&self) -> Grid {
        self.grid
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Coefficients `c_k` with `f(u_j) = sum_k c_k exp(i n_k u_j)`, in FFT bin order.
    pub fn coefficients(&self) -> Vec<Complex64> {
        fft::forward(&self.values)
    }

    /// Inverse of [`coefficients`](Self::coefficients); imaginary residue is discarded.
    pub fn from_coefficients(grid: Grid, coeffs: &[Complex64]) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(invalid("coefficient count does not match grid size"));
        }
        Self::new(grid, fft::inverse(coeffs))
    }

    /// Cosine coefficients `a_0..a_{N/2-1}` of the even part: `f ~ sum a_n cos(n u)`.
    pub fn cosine_coefficients(&self) -> Vec<f64> {
        let c = self.coefficients();
        let l = self.grid.cosine_modes();
        let mut a: Vec<f64> = c[..l].iter().map(|z| 2.0 * z.re).collect();
        a[0] = c[0].re;
        a
    }

    /// Synthesizes `sum_n a_n cos(n u)` for at most `N/2` coefficients.
    pub fn from_cosine_coefficients(grid: Grid, a: &[f64]) -> Result<Self> {
        let n = grid.len();
        if a.len() > grid.cosine_modes() {
            return Err(invalid(format!(
                "{} cosine coefficients exceed the {} modes of an N = {n} grid",
                a.len(),
                grid.cosine_modes()
            )));
        }
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        if let Some(&a0) = a.first() {
            c[0] = Complex64::new(a0, 0.0);
        }
        for (m, &am) in a.iter().enumerate().skip(1) {
            c[m] = Complex64::new(0.5 * am, 0.0);
            c[n - m] = Complex64::new(0.5 * am, 0.0);
        }
        Self::from_coefficients(grid, &c)
    }

    /// Trigonometric interpolant evaluated at an arbitrary `u`.
    pub fn evaluate(&self, u: f64) -> f64 {
        let n = self.len();
        self.coefficients()
            .iter()
            .enumerate()
            .map(|(k, c)| (c * Complex64::from_polar(1.0, fft::wavenumber(k, n) as f64 * u)).re)
            .sum()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// `(1/2pi) \oint f^2 du`, exact for band-limited profiles.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>() / self.len() as f64
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.check_same_grid(other)?;
        Self::new(
            self.grid,
            self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        )
    }

    pub fn scale(&self, a: f64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|v| a * v).collect() }
    }

    pub fn shift(&self, a: f64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|v| a + v).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise (aliased) product.
    pub fn mul_pointwise(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Largest sine-part magnitude, `max_j |f(u_j) - f(-u_j)| / 2`.
    pub fn odd_part_max(&self) -> f64 {
        let n = self.len();
        (0..n / 2).fold(0.0, |m, j| m.max(0.5 * (self.values[j] - self.values[n - 1 - j]).abs()))
    }

    pub(crate) fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(invalid(format!(
                "grid size mismatch: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cosine_coefficients_of_known_series() {
        let g = Grid::new(16).unwrap();
        let f = PeriodicProfile::from_fn(g, |u| 0.25 + 2.0 * u.cos() - 0.5 * (3.0 * u).cos()).unwrap();
        let a = f.cosine_coefficients();
        let expected = [0.25, 2.0, 0.0, -0.5, 0.0, 0.0, 0.0, 0.0];
        for (x, y) in a.iter().zip(expected) {
            assert!((x - y).abs() < 1e-14, "{a:?}");
        }
        let back = PeriodicProfile::from_cosine_coefficients(g, &a).unwrap();
        for (x, y) in back.values().iter().zip(f.values()) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn evaluate_off_grid() {
        let g = Grid::new(32).unwrap();
        let f = PeriodicProfile::from_fn(g, |u| (2.0 * u).sin() + 0.3 * u.cos()).unwrap();
        for u in [0.0, 0.123, 3.0, -2.2] {
            assert!((f.evaluate(u) - ((2.0 * u).sin() + 0.3 * u.cos())).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_wrong_length_and_nan() {
        let g = Grid::new(8).unwrap();
        assert!(PeriodicProfile::new(g, vec![0.0; 7]).is_err());
        let mut v = vec![0.0; 8];
        v[3] = f64::NAN;
        assert!(PeriodicProfile::new(g, v).is_err());
    }

    proptest! {
        #[test]
        fn fourier_round_trip(values in proptest::collection::vec(-10.0f64..10.0, 64)) {
            let g = Grid::new(64).unwrap();
            let f = PeriodicProfile::new(g, values).unwrap();
            let back = PeriodicProfile::from_coefficients(g, &f.coefficients()).unwrap();
            let scale = f.max_abs().max(1e-300);
            for (x, y) in back.values().iter().zip(f.values()) {
                prop_assert!((x - y).abs() <= 1e-12 * scale);
            }
        }
    }
}
