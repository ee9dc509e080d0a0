use num_complex::Complex64;

use super::depth::DepthMode;
use super::fft;
use super::profile::PeriodicProfile;
use crate::error::{invalid, Result};

/// How a symbol maps real fields to real fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// Real symbol with `m(-n) = m(n)`; keeps the Nyquist bin.
    EvenReal,
    /// Imaginary symbol with `m(-n) = -m(n)`; the Nyquist bin is annihilated.
    OddImaginary,
}

impl Parity {
    fn compose(self, other: Parity) -> Parity {
        if self == other {
            Parity::EvenReal
        } else {
            Parity::OddImaginary
        }
    }
}

/// Diagonal operator in Fourier space on an `N`-point grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralMultiplier {
    symbol: Vec<Complex64>,
    parity: Parity,
}

/// Symbol of the periodic Hilbert transform, `i sgn(n)`.
pub fn hilbert_symbol(n: i64) -> Complex64 {
    Complex64::new(0.0, n.signum() as f64)
}

/// Symbol of `d/du`, `i n`.
pub fn derivative_symbol(n: i64) -> Complex64 {
    Complex64::new(0.0, n as f64)
}

impl SpectralMultiplier {
    pub fn from_symbol(n: usize, parity: Parity, symbol: impl Fn(i64) -> Complex64) -> Self {
        let mut values: Vec<Complex64> = (0..n).map(|k| symbol(fft::wavenumber(k, n))).collect();
        if parity == Parity::OddImaginary && n > 0 {
            values[n / 2] = Complex64::new(0.0, 0.0);
        }
        Self { symbol: values, parity }
    }

    pub fn k_operator(mode: DepthMode, n: usize) -> Result<Self> {
        mode.validate()?;
        check_size(n)?;
        Ok(Self::from_symbol(n, Parity::EvenReal, |m| Complex64::new(mode.symbol(m), 0.0)))
    }

    pub fn hilbert(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self::from_symbol(n, Parity::OddImaginary, hilbert_symbol))
    }

    pub fn derivative(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self::from_symbol(n, Parity::OddImaginary, derivative_symbol))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.symbol.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.symbol.is_empty()
    }

    #[inline]
    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Symbol at signed wavenumber `m`, `|m| <= N/2`.
    pub fn symbol(&self, m: i64) -> Complex64 {
        let n = self.len();
        assert!(m.unsigned_abs() as usize <= n / 2, "wavenumber {m} outside |m| <= {}", n / 2);
        self.symbol[fft::bin(m, n)]
    }

    /// Operator product `self o other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(invalid("cannot compose multipliers of different sizes"));
        }
        Ok(Self {
            symbol: self.symbol.iter().zip(&other.symbol).map(|(a, b)| a * b).collect(),
            parity: self.parity.compose(other.parity),
        })
    }

    pub fn scale(&self, a: f64) -> Self {
        Self { symbol: self.symbol.iter().map(|s| s * a).collect(), parity: self.parity }
    }

    pub fn apply(&self, f: &PeriodicProfile) -> Result<PeriodicProfile> {
        if f.len() != self.len() {
            return Err(invalid(format!(
                "multiplier built for N = {} applied to a profile with N = {}",
                self.len(),
                f.len()
            )));
        }
        let mut buf: Vec<Complex64> = f.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft::fft_in_place(&mut buf);
        for (c, s) in buf.iter_mut().zip(&self.symbol) {
            *c *= s;
        }
        fft::ifft_in_place(&mut buf);
        let scale = 1.0 / self.len() as f64;
        PeriodicProfile::new(f.grid(), buf.into_iter().map(|c| c.re * scale).collect())
    }
}

fn check_size(n: usize) -> Result<()> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(invalid(format!("multiplier size must be even and >= 4, got {n}")));
    }
    Ok(())
}

pub fn k_multiplier(mode: DepthMode, n: usize) -> Result<SpectralMultiplier> {
    SpectralMultiplier::k_operator(mode, n)
}

pub fn hilbert(n: usize) -> Result<SpectralMultiplier> {
    SpectralMultiplier::hilbert(n)
}

pub fn apply_multiplier(f: &PeriodicProfile, m: &SpectralMultiplier) -> Result<PeriodicProfile> {
    m.apply(f)
}
