use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;
use stokeslab_core::io::write_atomic;
use stokeslab_core::singularity::{
    cancellation_check, find_exponents, grant_lhs, lemma_remainder_report, log_case_check,
    measured_action_coefficient, predicted_action_coefficient, CancellationReport, Exponents,
    LemmaReport, LogCaseReport,
};
use stokeslab_core::{Error, Result};

use crate::config::RunConfig;
use crate::Outcome;

pub const LEMMA_RESOLUTIONS: [usize; 3] = [2048, 8192, 32768];
pub const ACTION_POWERS: [f64; 5] = [1.0 / 3.0, 0.5, 2.0 / 3.0, 4.0 / 3.0, 5.0 / 3.0];
const DEFAULT_VERIFY_N: usize = 16384;

#[derive(Clone, Debug, Serialize)]
pub struct ActionCheck {
    pub p: f64,
    pub predicted: f64,
    pub measured: f64,
    pub relative_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub threads: usize,
    pub n: usize,
    pub exponents: Exponents,
    pub grant_lhs_at_two_thirds: f64,
    pub lemma: Vec<LemmaReport>,
    pub action: Vec<ActionCheck>,
    pub log_case: LogCaseReport,
    pub cancellation: CancellationReport,
    pub checks: Vec<Check>,
}

/// Reads `STOKESLAB_THREADS`; unset means the rayon default.
fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("STOKESLAB_THREADS") {
        let k: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&k| k > 0)
            .ok_or_else(|| Error::Config(format!("STOKESLAB_THREADS must be a positive integer, got `{v}`")))?;
        builder = builder.num_threads(k);
    }
    builder.build().map_err(|e| Error::Config(e.to_string()))
}

pub fn verify(config: &RunConfig) -> Result<Outcome> {
    let out = config.out.as_deref().expect("validated");
    let n = config.n.unwrap_or(DEFAULT_VERIFY_N);
    let window = config.window.unwrap_or((10.0 * TAU / n as f64, 0.1));
    let pool = thread_pool()?;
    let report = pool.install(|| build_report(n, window))?;
    let report = VerifyReport { threads: pool.current_num_threads(), ..report };
    let json = serde_json::to_string_pretty(&report).map_err(|e| Error::Config(e.to_string()))?;
    write_atomic(out, json.as_bytes())?;

    let mut message = format!(
        "beta root {:.15}; grant roots {:?}\n",
        report.exponents.beta_root, report.exponents.grant_roots
    );
    for c in &report.checks {
        message.push_str(&format!("{:<40} {}\n", c.name, if c.passed { "pass" } else { "FAIL" }));
    }
    Ok(Outcome { message, files: vec![out.to_path_buf()] })
}

fn build_report(n: usize, window: (f64, f64)) -> Result<VerifyReport> {
    let exponents = find_exponents();
    let g23 = grant_lhs(2.0 / 3.0)?;
    let cases: Vec<(f64, bool)> = [1.0 / 3.0, 0.5, 2.0 / 3.0]
        .into_iter()
        .flat_map(|nu| [(nu, false), (nu, true)])
        .collect();
    let lemma = cases
        .par_iter()
        .map(|&(nu, signed)| lemma_remainder_report(nu, signed, 1.0, &LEMMA_RESOLUTIONS))
        .collect::<Result<Vec<_>>>()?;
    let action = ACTION_POWERS
        .par_iter()
        .map(|&p| {
            let predicted = predicted_action_coefficient(p)?;
            let measured = measured_action_coefficient(p, n, window)?;
            Ok(ActionCheck { p, predicted, measured, relative_error: (measured - predicted).abs() / predicted.abs() })
        })
        .collect::<Result<Vec<_>>>()?;
    let log_case = log_case_check(n, window)?;
    let cancellation = cancellation_check(1.0, n.max(4096))?;

    let second = exponents.grant_roots.first().copied().unwrap_or(f64::NAN);
    let checks = vec![
        Check { name: "beta root = 2/3".into(), passed: (exponents.beta_root - 2.0 / 3.0).abs() <= 1e-12 },
        Check { name: "grant second root = 1.469".into(), passed: format!("{second:.3}") == "1.469" },
        Check { name: "grant_lhs(2/3) = 0".into(), passed: g23.abs() <= 1e-12 },
        Check {
            name: "lemma remainders stable".into(),
            passed: lemma.iter().all(|r| (0.8..=1.2).contains(&r.convergence_ratio)),
        },
        Check { name: "action coefficients within 1%".into(), passed: action.iter().all(|a| a.relative_error < 0.01) },
        Check { name: "log case within 2%".into(), passed: log_case.relative_error < 0.02 },
        Check {
            name: "|u|^(1/3) cancellation".into(),
            passed: cancellation.interaction_error() < 0.02
                && cancellation.half_k_square_error() < 0.02
                && cancellation.sum_fraction() <= 0.01,
        },
    ];
    Ok(VerifyReport {
        threads: 0,
        n,
        exponents,
        grant_lhs_at_two_thirds: g23,
        lemma,
        action,
        log_case,
        cancellation,
        checks,
    })
}
