use std::io;

use thiserror::Error;

/// Errors produced by the spectral, solver, and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("newton iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("jacobian is singular at the current state")]
    SingularJacobian,

    #[error("mu = {mu} lies within {distance:e} of a tangent pole")]
    PoleProximity { mu: f64, distance: f64 },

    #[error("p = 1 is the logarithmic case; use log_case_check instead")]
    LogCase,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
