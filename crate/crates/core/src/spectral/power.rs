use super::grid::Grid;
use super::profile::PeriodicProfile;
use crate::error::{invalid, Result};

/// Samples `|u|^p` (or `|u|^p sgn(u)` when `signed`) on the fundamental
/// interval, extended periodically.
pub fn sample_power(p: f64, grid: Grid, signed: bool) -> Result<PeriodicProfile> {
    if !(p > -1.0) || !p.is_finite() {
        return Err(invalid(format!("power must exceed -1 to be integrable, got {p}")));
    }
    PeriodicProfile::from_fn(grid, |u| {
        let v = u.abs().powf(p);
        if signed {
            v.copysign(u)
        } else {
            v
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_8};

    #[test]
    fn direct_values() {
        // N = 4 samples u = +-pi/4, +-3pi/4; N = 8 includes u = 3pi/8
        let g = Grid::new(8).unwrap();
        let f = sample_power(2.0 / 3.0, g, false).unwrap();
        let u = 3.0 * FRAC_PI_8;
        assert!((g.point(5) - u).abs() < 1e-15);
        assert!((f.values()[5] - u.powf(2.0 / 3.0)).abs() < 1e-15);
        assert!((f.values()[2] - u.powf(2.0 / 3.0)).abs() < 1e-15);
        // N = 6 samples u = pi/2
        let g = Grid::new(6).unwrap();
        let f = sample_power(2.0 / 3.0, g, false).unwrap();
        assert!((g.point(4) - FRAC_PI_2).abs() < 1e-15);
        assert!((f.values()[4] - FRAC_PI_2.powf(2.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn zero_power_is_constant() {
        let g = Grid::new(16).unwrap();
        let f = sample_power(0.0, g, false).unwrap();
        assert!(f.values().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn signed_negative_power() {
        let g = Grid::new(16).unwrap();
        let f = sample_power(-1.0 / 3.0, g, true).unwrap();
        for (j, v) in f.values().iter().enumerate() {
            let u = g.point(j);
            assert!((v - u.abs().powf(-1.0 / 3.0) * u.signum()).abs() < 1e-15);
        }
        assert!(f.values()[0] < 0.0 && f.values()[15] > 0.0);
    }

    #[test]
    fn rejects_non_integrable() {
        let g = Grid::new(16).unwrap();
        assert!(sample_power(-1.0, g, false).is_err());
        assert!(sample_power(-2.0, g, true).is_err());
        assert!(sample_power(f64::NAN, g, true).is_err());
    }
}
