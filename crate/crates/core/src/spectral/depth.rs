use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// Which `K` operator a wave uses.
///
/// The textual form (`deep`, `depth=<h>`, `toy`) is shared by the CLI flag
/// and the `mode` field of branch files.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DepthMode {
    /// Finite depth `h > 0`, symbol `n coth(h n)`.
    Finite(f64),
    /// Deep water, symbol `|n|`.
    Infinite,
    /// Toy model `K = -d^2/du^2`, symbol `n^2`.
    Toy,
}

impl DepthMode {
    pub fn finite(h: f64) -> Result<Self> {
        let mode = DepthMode::Finite(h);
        mode.validate()?;
        Ok(mode)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DepthMode::Finite(h) if !(h > 0.0 && h.is_finite()) => {
                Err(invalid(format!("depth must be positive and finite, got {h}")))
            }
            _ => Ok(()),
        }
    }

    /// Symbol of `K` at wavenumber `n`; zero at `n = 0` in every mode.
    pub fn symbol(&self, n: i64) -> f64 {
        if n == 0 {
            return 0.0;
        }
        let nf = n as f64;
        match *self {
            DepthMode::Finite(h) => nf / (h * nf).tanh(),
            DepthMode::Infinite => nf.abs(),
            DepthMode::Toy => nf * nf,
        }
    }

    pub fn is_deep(&self) -> bool {
        matches!(self, DepthMode::Infinite)
    }
}

impl fmt::Display for DepthMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DepthMode::Finite(h) => write!(f, "depth={h}"),
            DepthMode::Infinite => f.write_str("deep"),
            DepthMode::Toy => f.write_str("toy"),
        }
    }
}

impl FromStr for DepthMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "deep" => Ok(DepthMode::Infinite),
            "toy" => Ok(DepthMode::Toy),
            other => {
                let h = other
                    .strip_prefix("depth=")
                    .ok_or_else(|| invalid(format!("unknown depth mode '{other}'")))?;
                let h: f64 = h
                    .parse()
                    .map_err(|_| invalid(format!("bad depth value '{h}'")))?;
                DepthMode::finite(h)
            }
        }
    }
}

impl Serialize for DepthMode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DepthMode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols() {
        assert_eq!(DepthMode::Infinite.symbol(3), 3.0);
        assert_eq!(DepthMode::Infinite.symbol(-3), 3.0);
        assert_eq!(DepthMode::Toy.symbol(2), 4.0);
        // coth(1) from its exponential definition
        let coth1 = (1.0 + (-2.0f64).exp()) / (1.0 - (-2.0f64).exp());
        assert!((coth1 - 1.3130352855).abs() < 1e-10);
        assert!((DepthMode::Finite(1.0).symbol(1) - coth1).abs() < 1e-14);
        for mode in [DepthMode::Finite(0.3), DepthMode::Infinite, DepthMode::Toy] {
            assert_eq!(mode.symbol(0), 0.0);
        }
    }

    #[test]
    fn deep_limit_of_finite_depth() {
        let h = DepthMode::Finite(50.0);
        for n in 1..20 {
            assert!((h.symbol(n) - n as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn parse_and_display() {
        for text in ["deep", "toy", "depth=2.5"] {
            let mode: DepthMode = text.parse().unwrap();
            assert_eq!(mode.to_string(), text);
        }
        assert!("depth=0".parse::<DepthMode>().is_err());
        assert!("depth=-1".parse::<DepthMode>().is_err());
        assert!("shallow".parse::<DepthMode>().is_err());
        assert!(DepthMode::finite(0.0).is_err());
    }
}
