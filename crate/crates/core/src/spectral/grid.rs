use std::f64::consts::PI;

use crate::error::{invalid, Result};

/// Uniform staggered grid on the periodic interval `(-pi, pi)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    n: usize,
}

impl Grid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(invalid(format!("grid size must be even and >= 4, got {n}")));
        }
        Ok(Self { n })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    #[inline]
    pub fn point(&self, j: usize) -> f64 {
        -PI + (j as f64 + 0.5) * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.point(j)).collect()
    }

    /// Number of cosine modes `0..N/2` representable without the Nyquist bin.
    #[inline]
    pub fn cosine_modes(&self) -> usize {
        self.n / 2
    }

    /// Indices of grid points with `lo <= |u| <= hi`.
    pub fn window_indices(&self, lo: f64, hi: f64) -> Vec<usize> {
        (0..self.n)
            .filter(|&j| {
                let a = self.point(j).abs();
                a >= lo && a <= hi
            })
            .collect()
    }

    /// Indices of grid points with `lo <= u <= hi` and `u > 0`.
    pub fn positive_window_indices(&self, lo: f64, hi: f64) -> Vec<usize> {
        (self.n / 2..self.n)
            .filter(|&j| {
                let u = self.point(j);
                u >= lo && u <= hi
            })
            .collect()
    }
}

pub fn make_grid(n: usize) -> Result<Grid> {
    Grid::new(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_points() {
        let g = make_grid(4).unwrap();
        let expected = [-0.75 * PI, -0.25 * PI, 0.25 * PI, 0.75 * PI];
        for (p, e) in g.points().iter().zip(expected) {
            assert!((p - e).abs() < 1e-15);
        }
    }

    #[test]
    fn symmetric_and_never_zero() {
        let g = make_grid(8).unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 8);
        for j in 0..8 {
            assert!(pts[j] != 0.0);
            assert!((pts[j] + pts[7 - j]).abs() < 1e-15);
            assert!(pts[j] > -PI && pts[j] < PI);
        }
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(make_grid(3).is_err());
        assert!(make_grid(2).is_err());
        assert!(make_grid(0).is_err());
        assert!(make_grid(7).is_err());
    }
}
