use std::fs;
use std::path::Path;

use stokeslab_core::babenko::{continue_from_entry, seed_entry, BranchEntry};
use stokeslab_core::io::{append_branch, export_plot_data, load_branch, store_branch, BranchRecord};
use stokeslab_core::{DepthMode, Error, Grid, Result};

use crate::config::{RunConfig, DEFAULT_N};
use crate::Outcome;

fn existing_records(path: &Path) -> Result<Vec<BranchRecord>> {
    if path.exists() {
        load_branch(path)
    } else {
        Ok(Vec::new())
    }
}

fn seed(config: &RunConfig) -> Result<BranchEntry> {
    let height = config
        .height
        .ok_or_else(|| Error::Config("--height is required to start a branch".into()))?;
    let n = config.n.unwrap_or(DEFAULT_N);
    let mode = config.mode.unwrap_or(DepthMode::Infinite);
    seed_entry(Grid::new(n)?, mode, height, &config.solver(n))
}

fn describe(e: &BranchEntry) -> String {
    format!(
        "s = {:.6}  c = {:.6}  residual = {:.3e}  crest gap = {:.6}\n",
        e.height, e.speed, e.diagnostics.residual_norm, e.diagnostics.crest_gap
    )
}

pub fn solve(config: &RunConfig) -> Result<Outcome> {
    let path = config.branch.as_deref().expect("validated");
    if !existing_records(path)?.is_empty() {
        return Err(Error::Config(format!(
            "{} already holds records; use `continue` to extend it",
            path.display()
        )));
    }
    let entry = seed(config)?;
    store_branch(&[BranchRecord::from_entry(&entry)], path)?;
    let mut outcome = Outcome { message: describe(&entry), files: vec![path.to_path_buf()] };
    if let Some(dir) = &config.export {
        let s = export_plot_data(std::slice::from_ref(&entry), dir)?;
        outcome.files.extend(s.profiles.into_iter().chain(s.surfaces));
    }
    Ok(outcome)
}

pub fn continue_branch(config: &RunConfig) -> Result<Outcome> {
    let path = config.branch.as_deref().expect("validated");
    let target = config
        .to_height
        .ok_or_else(|| Error::Config("--to-height is required for continue".into()))?;
    let records = existing_records(path)?;
    let (start, fresh) = match records.last() {
        Some(last) => {
            if let Some(n) = config.n.filter(|&n| n != last.n) {
                return Err(Error::Config(format!(
                    "--n {n} does not match N = {} in {}",
                    last.n,
                    path.display()
                )));
            }
            if let Some(m) = config.mode.filter(|&m| m != last.mode) {
                return Err(Error::Config(format!(
                    "--mode {m} does not match mode {} in {}",
                    last.mode,
                    path.display()
                )));
            }
            (last.to_entry()?, false)
        }
        None => (seed(config)?, true),
    };
    let n = start.state.grid().len();
    let branch = continue_from_entry(&start, target, config.steps, &config.solver(n))?;
    let skip = if fresh { 0 } else { 1 };
    let new: Vec<BranchRecord> = branch.entries[skip..].iter().map(BranchRecord::from_entry).collect();
    if !new.is_empty() {
        if fresh {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
        }
        append_branch(&new, path)?;
    }
    let mut message = format!(
        "appended {} records; stop: {}{}\n",
        new.len(),
        branch.stop.as_str(),
        if branch.truncated { " (truncated)" } else { "" }
    );
    if let Some(last) = branch.entries.last() {
        message.push_str(&describe(last));
    }
    let mut outcome = Outcome { message, files: vec![path.to_path_buf()] };
    if let Some(dir) = config.export.as_ref().filter(|_| !new.is_empty()) {
        let s = export_plot_data(&branch.entries[skip..], dir)?;
        outcome.files.extend(s.profiles.into_iter().chain(s.surfaces));
    }
    Ok(outcome)
}
