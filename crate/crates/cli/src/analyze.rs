use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use stokeslab_core::babenko::crest_height;
use stokeslab_core::io::{export_plot_data, load_branch, write_atomic, write_fit_csv};
use stokeslab_core::singularity::{crest_fit_with_level, fit_table};
use stokeslab_core::{Error, Result};

use crate::config::RunConfig;
use crate::Outcome;

/// One state of an analyzed branch.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisRow {
    pub s: f64,
    pub c: f64,
    pub crest_gap: f64,
    pub beta: f64,
    pub a: f64,
    pub rms: f64,
    pub b: Option<f64>,
    pub mu: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisSummary {
    pub states: usize,
    pub n: usize,
    pub window: (f64, f64),
    pub max_height: f64,
    pub max_speed: f64,
    pub min_crest_gap: f64,
    pub first_beta: f64,
    pub last_beta: f64,
    /// Whether beta decreases strictly over the last (up to) five states.
    pub beta_decreasing_at_end: bool,
    pub subleading_failures: usize,
}

fn summary_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}_summary.json"))
}

/// `(10 du, 0.1)`, widened on coarse grids so the window never collapses.
pub fn default_window(n: usize) -> (f64, f64) {
    let lo = 10.0 * std::f64::consts::TAU / n as f64;
    (lo, (2.0 * lo).clamp(0.1, 0.5))
}

/// Crest fits against the interpolated crest level `eta(0)`.
pub fn analyze(config: &RunConfig) -> Result<Outcome> {
    let path = config.branch.as_deref().expect("validated");
    let out = config.out.as_deref().expect("validated");
    let records = load_branch(path)?;
    if records.is_empty() {
        return Err(Error::InvalidArgument(format!("{} holds no records", path.display())));
    }
    let n = records[0].n;
    if records.iter().any(|r| r.n != n) {
        return Err(Error::Config("branch mixes grid sizes".into()));
    }
    let window = config.window.unwrap_or_else(|| default_window(n));
    let mut rows = Vec::with_capacity(records.len());
    let mut entries = Vec::with_capacity(records.len());
    let mut fit_files = Vec::new();
    for (i, rec) in records.iter().enumerate() {
        let entry = rec.to_entry()?;
        let profile = &entry.state.profile;
        let fit = crest_fit_with_level(profile, crest_height(profile), window, config.subleading)?;
        if let Some(dir) = &config.export {
            std::fs::create_dir_all(dir)?;
            let f = dir.join(format!("fit_{i:04}.csv"));
            write_fit_csv(&fit_table(profile, &fit)?, &f)?;
            fit_files.push(f);
        }
        rows.push(AnalysisRow {
            s: rec.s,
            c: rec.c,
            crest_gap: rec.crest_gap,
            beta: fit.beta,
            a: fit.a,
            rms: fit.rms_residual,
            b: fit.b,
            mu: fit.mu,
        });
        entries.push(entry);
    }

    let mut csv = String::from("s,c,crest_gap,beta,A,rms");
    if config.subleading {
        csv.push_str(",B,mu");
    }
    csv.push('\n');
    let cell = |v: Option<f64>| v.map_or_else(|| "nan".to_string(), |v| format!("{v:.16e}"));
    for r in &rows {
        let _ = write!(
            csv,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.s, r.c, r.crest_gap, r.beta, r.a, r.rms
        );
        if config.subleading {
            let _ = write!(csv, ",{},{}", cell(r.b), cell(r.mu));
        }
        csv.push('\n');
    }
    write_atomic(out, csv.as_bytes())?;

    let tail = &rows[rows.len().saturating_sub(5)..];
    let summary = AnalysisSummary {
        states: rows.len(),
        n,
        window,
        max_height: rows.iter().map(|r| r.s).fold(f64::MIN, f64::max),
        max_speed: rows.iter().map(|r| r.c).fold(f64::MIN, f64::max),
        min_crest_gap: rows.iter().map(|r| r.crest_gap).fold(f64::MAX, f64::min),
        first_beta: rows[0].beta,
        last_beta: rows[rows.len() - 1].beta,
        beta_decreasing_at_end: tail.windows(2).all(|w| w[1].beta < w[0].beta),
        subleading_failures: rows.iter().filter(|r| config.subleading && r.mu.is_none()).count(),
    };
    let json = serde_json::to_string_pretty(&summary).map_err(|e| Error::Config(e.to_string()))?;
    let spath = summary_path(out);
    write_atomic(&spath, json.as_bytes())?;

    let mut files = vec![out.to_path_buf(), spath];
    files.extend(fit_files);
    if let Some(dir) = &config.export {
        let s = export_plot_data(&entries, dir)?;
        files.extend(s.profiles.into_iter().chain(s.surfaces));
    }

    let mut message = format!("{:>10} {:>10} {:>10} {:>10} {:>10}\n", "s", "c", "crest_gap", "beta", "A");
    for r in &rows {
        let _ = writeln!(message, "{:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}", r.s, r.c, r.crest_gap, r.beta, r.a);
    }
    let _ = writeln!(
        message,
        "{} states; beta {:.6} -> {:.6}; decreasing over the last {}: {}",
        summary.states,
        summary.first_beta,
        summary.last_beta,
        tail.len(),
        summary.beta_decreasing_at_end
    );
    Ok(Outcome { message, files })
}
