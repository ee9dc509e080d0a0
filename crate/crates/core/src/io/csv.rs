use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::babenko::{physical_surface, BranchEntry, PhysicalSurface};
use crate::error::{invalid, Error, Result};
use crate::singularity::FitRow;
use crate::spectral::{Grid, PeriodicProfile};

/// Writes through a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| invalid(format!("{} is not a file path", path.display())))?
        .to_string_lossy();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}

fn table(header: &str, rows: impl Iterator<Item = Vec<f64>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

/// `u,value` rows, one per grid point.
pub fn write_profile_csv(profile: &PeriodicProfile, path: &Path) -> Result<()> {
    let g = profile.grid();
    let rows = profile.values().iter().enumerate().map(|(j, &v)| vec![g.point(j), v]);
    write_atomic(path, table("u,value", rows).as_bytes())
}

pub fn read_profile_csv(path: &Path) -> Result<PeriodicProfile> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == "u,value" => {}
        _ => return Err(Error::Parse { line: 1, message: "expected header \"u,value\"".into() }),
    }
    let mut values = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let err = |m: &str| Error::Parse { line: i + 1, message: m.to_string() };
        let mut cells = line.split(',');
        let (Some(_u), Some(v), None) = (cells.next(), cells.next(), cells.next()) else {
            return Err(err("expected two columns"));
        };
        values.push(v.trim().parse::<f64>().map_err(|e| err(&e.to_string()))?);
    }
    PeriodicProfile::new(Grid::new(values.len())?, values)
}

/// `x,y` rows of the physical surface.
pub fn write_surface_csv(surface: &PhysicalSurface, path: &Path) -> Result<()> {
    let rows = surface.x.iter().zip(&surface.y).map(|(&x, &y)| vec![x, y]);
    write_atomic(path, table("x,y", rows).as_bytes())
}

/// `u,deviation,model,residual` rows of a crest fit.
pub fn write_fit_csv(rows: &[FitRow], path: &Path) -> Result<()> {
    let rows = rows.iter().map(|r| vec![r.u, r.deviation, r.model, r.residual]);
    write_atomic(path, table("u,deviation,model,residual", rows).as_bytes())
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExportSummary {
    pub profiles: Vec<PathBuf>,
    pub surfaces: Vec<PathBuf>,
}

/// Writes `profile_{i:04}.csv` for every entry into `dir`, plus
/// `surface_{i:04}.csv` for deep-water entries.
pub fn export_plot_data(entries: &[BranchEntry], dir: &Path) -> Result<ExportSummary> {
    if entries.is_empty() {
        return Err(invalid("nothing to export"));
    }
    fs::create_dir_all(dir)?;
    let mut summary = ExportSummary::default();
    for (i, e) in entries.iter().enumerate() {
        let p = dir.join(format!("profile_{i:04}.csv"));
        write_profile_csv(&e.state.profile, &p)?;
        summary.profiles.push(p);
        if e.state.mode.is_deep() {
            let s = dir.join(format!("surface_{i:04}.csv"));
            write_surface_csv(&physical_surface(&e.state)?, &s)?;
            summary.surfaces.push(s);
        }
    }
    Ok(summary)
}
