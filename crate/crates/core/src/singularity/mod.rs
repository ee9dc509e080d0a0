//! Crest-singularity analysis: exponent equations, asymptotics of `K_inf`
//! and `H` on fractional powers, and fits of computed crest profiles.

mod action;
mod cancellation;
mod crest_fit;
mod exponents;
mod lemma;
mod lsq;

pub use action::{
    log_case_check, measured_action_coefficient, one_sided_action_coefficient,
    predicted_action_coefficient, validate_window, LogCaseReport,
};
pub use cancellation::{cancellation_check, CancellationReport};
pub use crest_fit::{crest_fit, crest_fit_with_level, fit_table, FitRow, SingularityFit};
pub use exponents::{
    beta_equation, find_exponents, grant_lhs, subleading_balance, Exponents, GRANT_KNOWN_ROOT,
};
pub use lemma::{lemma_remainder_report, predicted_lemma_coefficient, LemmaReport};
pub use lsq::{least_squares, LeastSquares};
