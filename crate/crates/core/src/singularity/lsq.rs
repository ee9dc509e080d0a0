use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LeastSquares {
    pub coefficients: Vec<f64>,
    /// Root-mean-square of the residual `y - X c`.
    pub rms_residual: f64,
}

/// Solves `min |X c - y|` for the columns in `basis`, via SVD of the
/// column-equilibrated design matrix.
pub fn least_squares(basis: &[Vec<f64>], y: &[f64]) -> Result<LeastSquares> {
    let m = y.len();
    let k = basis.len();
    if k == 0 || m < k || basis.iter().any(|col| col.len() != m) {
        return Err(invalid("least-squares system is under-determined or ragged"));
    }
    let scales: Vec<f64> = basis
        .iter()
        .map(|col| col.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    if scales.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
        return Err(invalid("least-squares basis has a zero or non-finite column"));
    }
    let x = DMatrix::from_fn(m, k, |i, j| basis[j][i] / scales[j]);
    let rhs = DVector::from_column_slice(y);
    let sol = x
        .clone()
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| invalid(format!("least-squares solve failed: {e}")))?;
    let res = &rhs - &x * &sol;
    let coefficients = sol.iter().zip(&scales).map(|(c, s)| c / s).collect();
    Ok(LeastSquares { coefficients, rms_residual: (res.norm_squared() / m as f64).sqrt() })
}
