//! Full scan: solve on the z0 grid, track branches, analyse crossings and
//! stationary points, derive couplings.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::config::ScanConfig;
use crate::coupling::{
    branch_extrema, derivative_estimates, detect_avoided_crossings, max_slope, refine_crossing, AvoidedCrossing,
    CouplingContext, CouplingReport,
};
use crate::error::{Error, Result};
use crate::spectrum::eigen::{solve_eigenvalues, SpectrumPoint};
use crate::spectrum::tracking::{track_branches, Branch, Tracker};
use crate::spectrum::PerturbationModel;

#[derive(Debug, Clone)]
pub struct ScanResult {
    pub config: ScanConfig,
    /// Longitudinal index of the reference mode.
    pub reference_index: u64,
    /// Hz
    pub reference_frequency: f64,
    /// Row labels of the basis, e.g. `TEM20,p-1`.
    pub labels: Vec<String>,
    pub branches: Vec<Branch>,
    pub crossings: Vec<AvoidedCrossing>,
    pub couplings: Vec<CouplingReport>,
    pub elapsed: Duration,
}

impl ScanResult {
    pub fn branch(&self, id: usize) -> Option<&Branch> {
        self.branches.iter().find(|b| b.id == id)
    }

    /// Number of samples per branch (grid points plus inserted refinements).
    pub fn samples(&self) -> usize {
        self.branches.first().map_or(0, |b| b.samples.len())
    }
}

/// Solves one axial position.
pub fn solve_at(model: &PerturbationModel, z0: f64) -> Result<SpectrumPoint> {
    let run = || {
        let sys = model.system_at(z0)?;
        let pairs = solve_eigenvalues(&sys)?;
        SpectrumPoint::from_pairs(z0, pairs, model.basis().reference_wavenumber())
    };
    run().map_err(|e| Error::at(z0, e))
}

pub fn solve_grid(model: &PerturbationModel, grid: &[f64]) -> Result<Vec<SpectrumPoint>> {
    grid.par_iter().map(|&z| solve_at(model, z)).collect()
}

/// Branches resampled on `grid` (sorted), continued from the coarse
/// sample of each branch nearest to the start of the grid.
pub fn local_branches(model: &PerturbationModel, coarse: &[Branch], grid: &[f64], cfg: &ScanConfig) -> Result<Vec<Branch>> {
    let metric = model.basis().metric();
    let k = coarse[0].samples.partition_point(|s| s.z0 <= grid[0]).saturating_sub(1);
    let z_start = coarse[0].samples[k].z0;
    let current = coarse.iter().map(|b| b.samples[k].vector.clone()).collect();
    let ids = coarse.iter().map(|b| b.id).collect();
    let points = solve_grid(model, grid)?;
    let mut tr = Tracker::resume(current, ids, &metric, |z| solve_at(model, z), cfg.tracking_options());
    let mut prev = z_start;
    for p in &points {
        tr.advance(prev, p)?;
        prev = p.z0;
    }
    Ok(tr.finish())
}

fn dense_grid(center: f64, half: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| center - half + 2.0 * half * i as f64 / (n - 1) as f64).collect()
}

struct CrossingAnalysis {
    crossing: AvoidedCrossing,
    reports: Vec<CouplingReport>,
}

fn analyse_crossing(
    model: &PerturbationModel,
    branches: &[Branch],
    c: &AvoidedCrossing,
    cfg: &ScanConfig,
    ctx: &CouplingContext,
) -> Result<CrossingAnalysis> {
    let window = cfg.fit_window();
    let half = if c.width.is_finite() { (0.25 * c.width).min(window) } else { window };
    let grid = dense_grid(c.z0, half, cfg.analysis.crossing_samples);
    let local = local_branches(model, branches, &grid, cfg)?;
    let find = |id: usize| local.iter().find(|b| b.id == id).expect("branch ids are preserved");
    let (up, lo) = (find(c.upper_branch), find(c.lower_branch));
    let refined = refine_crossing(c, up, lo);
    let mut reports = Vec::new();
    for (b, fallback) in [(up, refined.curvature_upper), (lo, refined.curvature_lower)] {
        let (slope, curv) = match derivative_estimates(b, refined.z0, 0.25 * refined.width.min(4.0 * window)) {
            Ok(e) => (e.slope, e.curvature),
            Err(_) => (0.0, fallback),
        };
        reports.push(CouplingReport::new("crossing", b.id, refined.z0, slope, curv, ctx));
    }
    Ok(CrossingAnalysis { crossing: refined, reports })
}

pub fn run_scan(cfg: &ScanConfig) -> Result<ScanResult> {
    let t0 = Instant::now();
    cfg.validate()?;
    let geom = cfg.geometry()?;
    let basis = cfg.basis()?;
    let grid = cfg.z0_grid();
    let membrane = cfg.membrane_state(grid[0]);
    let model = PerturbationModel::new(basis, geom.clone(), membrane)?;
    let ctx = CouplingContext::new(cfg.mechanics.mass, cfg.mechanics.angular_frequency, cfg.mechanics.theta)?;

    let points = solve_grid(&model, &grid)?;
    log::info!("solved {} points in {:.3} s", points.len(), t0.elapsed().as_secs_f64());
    let metric = model.basis().metric();
    let branches = track_branches(&points, &metric, |z| solve_at(&model, z), cfg.tracking_options())?;
    drop(points);

    let mut crossings = Vec::new();
    let mut couplings = Vec::new();
    if cfg.analysis.crossings {
        let found = detect_avoided_crossings(&branches);
        log::info!("{} avoided crossings", found.len());
        let analysed: Vec<CrossingAnalysis> =
            found.par_iter().map(|c| analyse_crossing(&model, &branches, c, cfg, &ctx)).collect::<Result<_>>()?;
        for a in analysed {
            crossings.push(a.crossing);
            couplings.extend(a.reports);
        }
    }

    if cfg.analysis.extrema {
        let window = cfg.fit_window();
        let per_branch: Vec<Vec<CouplingReport>> = branches
            .par_iter()
            .map(|b| {
                let mut out = Vec::new();
                for e in branch_extrema(b, window) {
                    let near_crossing = crossings.iter().any(|c| {
                        (c.upper_branch == b.id || c.lower_branch == b.id) && (c.z0 - e.z0).abs() <= window
                    });
                    if !near_crossing {
                        out.push(CouplingReport::new("extremum", b.id, e.z0, e.slope, e.curvature, &ctx));
                    }
                }
                if let Some(e) = max_slope(b, window) {
                    out.push(CouplingReport::new("max_slope", b.id, e.z0, e.slope, e.curvature, &ctx));
                }
                out
            })
            .collect();
        couplings.extend(per_branch.into_iter().flatten());
    }

    let labels = (0..model.basis().len()).map(|r| model.basis().label(r)).collect();
    Ok(ScanResult {
        config: cfg.clone(),
        reference_index: geom.reference_index(),
        reference_frequency: geom.frequency(&model.basis().modes()[0]),
        labels,
        branches,
        crossings,
        couplings,
        elapsed: t0.elapsed(),
    })
}
