use std::fs;
use std::io::ErrorKind;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::babenko::{BranchEntry, Diagnostics};
use crate::error::{Error, Result};
use crate::spectral::{DepthMode, Grid};

use super::csv::write_atomic;

/// One line of a branch file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchRecord {
    pub s: f64,
    pub c: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub mode: DepthMode,
    pub cos_coeffs: Vec<f64>,
    pub residual_norm: f64,
    pub mean_zero_value: f64,
    pub crest_gap: f64,
}

impl BranchRecord {
    pub fn from_entry(entry: &BranchEntry) -> Self {
        let d = &entry.diagnostics;
        Self {
            s: entry.height,
            c: entry.speed,
            n: entry.state.grid().len(),
            mode: entry.state.mode,
            cos_coeffs: entry.cos_coeffs.clone(),
            residual_norm: d.residual_norm,
            mean_zero_value: d.mean_zero_value,
            crest_gap: d.crest_gap,
        }
    }

    /// Rebuilds the state; diagnostics are recomputed from the coefficients.
    pub fn to_entry(&self) -> Result<BranchEntry> {
        BranchEntry::from_coefficients(
            Grid::new(self.n)?,
            self.mode,
            self.s,
            self.c,
            self.cos_coeffs.clone(),
        )
    }

    pub fn stored_diagnostics(&self, tail_fraction: f64) -> Diagnostics {
        Diagnostics {
            residual_norm: self.residual_norm,
            mean_zero_value: self.mean_zero_value,
            crest_gap: self.crest_gap,
            tail_fraction,
        }
    }

    fn check(&self) -> std::result::Result<(), String> {
        if self.n < 4 || !self.n.is_multiple_of(2) {
            return Err(format!("N = {} is not an even size >= 4", self.n));
        }
        if self.cos_coeffs.len() > self.n / 2 {
            return Err(format!("{} cosine coefficients exceed N/2 = {}", self.cos_coeffs.len(), self.n / 2));
        }
        let scalars = [self.s, self.c, self.residual_norm, self.mean_zero_value, self.crest_gap];
        if scalars.iter().chain(&self.cos_coeffs).any(|v| !v.is_finite()) {
            return Err("non-finite value".into());
        }
        Ok(())
    }
}

fn encode(records: &[BranchRecord]) -> Result<String> {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).map_err(|e| Error::Config(e.to_string()))?);
        out.push('\n');
    }
    Ok(out)
}

/// Reads a branch file. A missing trailing newline is accepted; blank lines are skipped.
pub fn load_branch(path: &Path) -> Result<Vec<BranchRecord>> {
    let text = fs::read_to_string(path)?;
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: i + 1, message };
        let rec: BranchRecord = serde_json::from_str(line).map_err(|e| parse_err(e.to_string()))?;
        rec.check().map_err(parse_err)?;
        records.push(rec);
    }
    Ok(records)
}

/// Replaces `path` with `records`, atomically.
pub fn store_branch(records: &[BranchRecord], path: &Path) -> Result<()> {
    write_atomic(path, encode(records)?.as_bytes())
}

/// Appends `records` to `path` (created if absent) by rewriting it atomically.
pub fn append_branch(records: &[BranchRecord], path: &Path) -> Result<()> {
    let mut text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == ErrorKind::NotFound => String::new(),
        Err(e) => return Err(e.into()),
    };
    if !text.is_empty() && !text.ends_with('\n') {
        text.push('\n');
    }
    text.push_str(&encode(records)?);
    write_atomic(path, text.as_bytes())
}
