//! CSV datasets and run manifest.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scan::ScanResult;
use crate::units::{curvature_to_mhz_per_nm2, hz_to_mhz, m_to_nm, slope_to_mhz_per_nm};

pub const BRANCHES_FILE: &str = "branches.csv";
pub const CROSSINGS_FILE: &str = "crossings.csv";
pub const COUPLINGS_FILE: &str = "couplings.csv";
pub const MANIFEST_FILE: &str = "manifest.toml";

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io { path: path.to_path_buf(), source }
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    let source = match e.into_kind() {
        csv::ErrorKind::Io(io) => io,
        other => std::io::Error::other(format!("{other:?}")),
    };
    io_err(path, source)
}

/// Shortest representation that parses back to the same f64.
fn num(x: f64) -> String {
    format!("{x}")
}

fn write_csv(path: &Path, header: &[String], rows: impl Iterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    w.write_record(header).map_err(|e| csv_err(path, e))?;
    for r in rows {
        w.write_record(&r).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

#[derive(Serialize)]
struct Manifest<'a> {
    version: &'a str,
    timestamp_unix: u64,
    reference_index: u64,
    reference_frequency_hz: f64,
    basis: &'a [String],
    branches: usize,
    samples_per_branch: usize,
    crossings: usize,
    couplings: usize,
    elapsed_seconds: f64,
    config: &'a crate::config::ScanConfig,
}

/// Writes the four output files into `dir` (created if missing) and returns
/// their paths.
pub fn emit_datasets(result: &ScanResult, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let n = result.labels.len();

    let branches = dir.join(BRANCHES_FILE);
    let mut header: Vec<String> = ["z0_nm", "branch_id", "delta_nu_MHz", "dominant_mode"].map(String::from).to_vec();
    header.extend((1..=n).map(|i| format!("c_{i}")));
    let mut rows: Vec<(f64, usize, Vec<String>)> = Vec::new();
    for b in &result.branches {
        for s in &b.samples {
            let mut r = vec![num(m_to_nm(s.z0)), b.id.to_string(), num(hz_to_mhz(s.shift)), result.labels[s.dominant].clone()];
            r.extend(s.vector.iter().map(|&c| num(c)));
            rows.push((s.z0, b.id, r));
        }
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    write_csv(&branches, &header, rows.into_iter().map(|r| r.2))?;

    let crossings = dir.join(CROSSINGS_FILE);
    let header = [
        "z0_nm",
        "gap_MHz",
        "curvature_upper_MHz_per_nm2",
        "curvature_lower_MHz_per_nm2",
        "modes",
        "upper_branch",
        "lower_branch",
        "resolved",
    ]
    .map(String::from);
    write_csv(
        &crossings,
        &header,
        result.crossings.iter().map(|c| {
            vec![
                num(m_to_nm(c.z0)),
                num(hz_to_mhz(c.gap)),
                num(curvature_to_mhz_per_nm2(c.curvature_upper)),
                num(curvature_to_mhz_per_nm2(c.curvature_lower)),
                format!("{}/{}", result.labels[c.modes.0], result.labels[c.modes.1]),
                c.upper_branch.to_string(),
                c.lower_branch.to_string(),
                c.resolved.to_string(),
            ]
        }),
    )?;

    let couplings = dir.join(COUPLINGS_FILE);
    let header = [
        "location",
        "branch_id",
        "z0_nm",
        "slope_MHz_per_nm",
        "curvature_MHz_per_nm2",
        "G0_over_2pi_Hz",
        "G2_over_2pi_Hz",
    ]
    .map(String::from);
    write_csv(
        &couplings,
        &header,
        result.couplings.iter().map(|c| {
            vec![
                c.location.clone(),
                c.branch_id.to_string(),
                num(m_to_nm(c.z0)),
                num(slope_to_mhz_per_nm(c.slope)),
                num(curvature_to_mhz_per_nm2(c.curvature)),
                num(c.g0_over_2pi()),
                num(c.g2_over_2pi()),
            ]
        }),
    )?;

    let manifest = dir.join(MANIFEST_FILE);
    let m = Manifest {
        version: env!("CARGO_PKG_VERSION"),
        timestamp_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        reference_index: result.reference_index,
        reference_frequency_hz: result.reference_frequency,
        basis: &result.labels,
        branches: result.branches.len(),
        samples_per_branch: result.samples(),
        crossings: result.crossings.len(),
        couplings: result.couplings.len(),
        elapsed_seconds: result.elapsed.as_secs_f64(),
        config: &result.config,
    };
    let text = toml::to_string(&m).map_err(|e| io_err(&manifest, std::io::Error::other(e.to_string())))?;
    fs::write(&manifest, text).map_err(|e| io_err(&manifest, e))?;

    Ok(vec![branches, crossings, couplings, manifest])
}
