//! Observables extracted from tracked branches: slopes, curvatures,
//! avoided-crossing gaps and the optomechanical rates built from them.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::spectrum::tracking::Branch;
use crate::units::HBAR;

/// Mechanical side of the coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingContext {
    /// kg
    pub mass: f64,
    /// rad/s
    pub angular_frequency: f64,
    /// Transverse overlap factor, in [0, 1].
    pub theta: f64,
}

impl CouplingContext {
    pub fn new(mass: f64, angular_frequency: f64, theta: f64) -> Result<Self> {
        if !(mass > 0.0) || !(angular_frequency > 0.0) {
            return Err(Error::Domain("mass and mechanical frequency must be positive".into()));
        }
        if !(0.0..=1.0).contains(&theta) {
            return Err(Error::Domain(format!("overlap factor {theta} outside [0, 1]")));
        }
        Ok(CouplingContext { mass, angular_frequency, theta })
    }

    pub fn x0(&self) -> f64 {
        zero_point_width(self.mass, self.angular_frequency)
    }
}

/// sqrt(hbar / (m Omega)), metres.
pub fn zero_point_width(mass: f64, angular_frequency: f64) -> f64 {
    (HBAR / (mass * angular_frequency)).sqrt()
}

/// G0 in rad/s from `d omega / d z0` in rad/s/m.
pub fn linear_coupling(slope: f64, ctx: &CouplingContext) -> f64 {
    slope.abs() * ctx.x0() * ctx.theta
}

/// G2 in rad/s from `d^2 omega / d z0^2` in rad/s/m^2. Keeps the sign.
pub fn quadratic_coupling(curvature: f64, ctx: &CouplingContext) -> f64 {
    curvature * ctx.x0() * ctx.x0()
}

/// Intensity reflectivity of a lossless dielectric slab at normal incidence.
/// `_n_i` is accepted for symmetry with the membrane description; at the
/// values of interest it changes R far below any quoted precision.
pub fn membrane_reflectivity(n_r: f64, _n_i: f64, thickness: f64, wavelength: f64) -> f64 {
    let d = 2.0 * PI * n_r * thickness / wavelength;
    let (s, c) = d.sin_cos();
    let num = ((n_r * n_r - 1.0) * s).powi(2);
    num / ((2.0 * n_r * c).powi(2) + ((n_r * n_r + 1.0) * s).powi(2))
}

/// Upper bound on |d nu / d z0| for a membrane of reflectivity `r`, Hz/m.
pub fn max_linear_coupling(nu0: f64, r: f64, length: f64) -> f64 {
    2.0 * nu0 * r.sqrt() / length
}

pub const MIN_FIT_SAMPLES: usize = 9;

/// Local fit result; slope in Hz/m and curvature in Hz/m^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeEstimate {
    pub z0: f64,
    pub value: f64,
    pub slope: f64,
    pub curvature: f64,
    /// Hz/m^3
    pub third: f64,
    /// RMS fit residual, Hz.
    pub residual: f64,
    pub samples: usize,
}

/// Least-squares quartic through the samples with `|z - z0| <= half_width`.
pub fn fit_derivatives(z: &[f64], y: &[f64], z0: f64, half_width: f64) -> Result<DerivativeEstimate> {
    let idx: Vec<usize> = (0..z.len()).filter(|&i| (z[i] - z0).abs() <= half_width).collect();
    if idx.len() < MIN_FIT_SAMPLES || !(half_width > 0.0) {
        return Err(Error::InsufficientSamples { z0, found: idx.len(), needed: MIN_FIT_SAMPLES });
    }
    let y_ref = y[idx[idx.len() / 2]];
    let a = DMatrix::from_fn(idx.len(), 5, |r, c| ((z[idx[r]] - z0) / half_width).powi(c as i32));
    let b = DVector::from_iterator(idx.len(), idx.iter().map(|&i| y[i] - y_ref));
    let svd = a.clone().svd(true, true);
    let coef = svd.solve(&b, 1e-14).map_err(|e| Error::Domain(format!("derivative fit failed: {e}")))?;
    let res = (&a * &coef - &b).norm() / (idx.len() as f64).sqrt();
    Ok(DerivativeEstimate {
        z0,
        value: y_ref + coef[0],
        slope: coef[1] / half_width,
        curvature: 2.0 * coef[2] / (half_width * half_width),
        third: 6.0 * coef[3] / half_width.powi(3),
        residual: res,
        samples: idx.len(),
    })
}

/// Slope and curvature of a branch's frequency shift at `z0`.
pub fn derivative_estimates(branch: &Branch, z0: f64, half_width: f64) -> Result<DerivativeEstimate> {
    fit_derivatives(&branch.z0(), &branch.shifts(), z0, half_width)
}

/// Stationary points of a branch, refined by Newton steps on the local fit.
pub fn branch_extrema(branch: &Branch, half_width: f64) -> Vec<DerivativeEstimate> {
    let z = branch.z0();
    let y = branch.shifts();
    let mut out: Vec<DerivativeEstimate> = Vec::new();
    for k in 1..z.len().saturating_sub(1) {
        let d0 = y[k] - y[k - 1];
        let d1 = y[k + 1] - y[k];
        if !(d0 * d1 < 0.0 || (d0 != 0.0 && d1 == 0.0)) {
            continue;
        }
        let mut zc = z[k];
        let mut est = None;
        for _ in 0..4 {
            match fit_derivatives(&z, &y, zc, half_width) {
                Ok(e) => {
                    est = Some(e);
                    if e.curvature == 0.0 {
                        break;
                    }
                    let step = -e.slope / e.curvature;
                    if !(step.abs() <= half_width) {
                        break;
                    }
                    zc += step;
                }
                Err(_) => break,
            }
        }
        if let Some(e) = est.and_then(|_| fit_derivatives(&z, &y, zc, half_width).ok()) {
            if out.last().is_none_or(|p| (p.z0 - e.z0).abs() > half_width) {
                out.push(e);
            }
        }
    }
    out
}

/// Largest |d nu / d z0| along a branch, from local fits at every sample
/// where one is possible. Returns the fit at the steepest point.
pub fn max_slope(branch: &Branch, half_width: f64) -> Option<DerivativeEstimate> {
    let z = branch.z0();
    let y = branch.shifts();
    // coarse scan by finite differences, then fit at the best few
    let mut cand: Vec<(f64, usize)> = (1..z.len()).map(|k| (((y[k] - y[k - 1]) / (z[k] - z[k - 1])).abs(), k)).collect();
    cand.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best: Option<DerivativeEstimate> = None;
    for &(_, k) in cand.iter().take(8) {
        let mut zc = 0.5 * (z[k] + z[k - 1]);
        if let Ok(mut e) = fit_derivatives(&z, &y, zc, half_width) {
            // Newton steps towards the inflection point of the fit
            for _ in 0..3 {
                let step = -e.curvature / e.third;
                if !(step.abs() <= 0.5 * half_width) {
                    break;
                }
                zc += step;
                match fit_derivatives(&z, &y, zc, half_width) {
                    Ok(f) => e = f,
                    Err(_) => break,
                }
            }
            if best.is_none_or(|b| e.slope.abs() > b.slope.abs()) {
                best = Some(e);
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct AvoidedCrossing {
    /// Location of the gap minimum, m.
    pub z0: f64,
    /// Hz
    pub gap: f64,
    /// Hz/m^2
    pub curvature_upper: f64,
    pub curvature_lower: f64,
    pub upper_branch: usize,
    pub lower_branch: usize,
    /// Dominant basis rows of the upper and lower branch at the gap.
    pub modes: (usize, usize),
    /// Asymptotic rate at which the gap opens away from the minimum, Hz/m.
    pub gap_slope: f64,
    /// gap / gap_slope, m.
    pub width: f64,
    /// Whether the sampling resolves the crossing (width at least one step).
    pub resolved: bool,
}

/// Relative level (of the largest shift) below which two branches count as
/// degenerate rather than as an avoided crossing.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Parabola through three points, as (vertex, value at vertex, leading coefficient).
fn parabola(z: [f64; 3], y: [f64; 3]) -> Option<(f64, f64, f64)> {
    let (h0, h1) = (z[1] - z[0], z[2] - z[1]);
    let d0 = (y[1] - y[0]) / h0;
    let d1 = (y[2] - y[1]) / h1;
    let a = (d1 - d0) / (h0 + h1);
    if !(a > 0.0) {
        return None;
    }
    let b = d0 - a * (z[0] + z[1]);
    let zv = -b / (2.0 * a);
    let yv = y[1] + (zv - z[1]) * (b + a * (zv + z[1]));
    Some((zv, yv, a))
}

/// Gap minimum between `upper` and `lower` near sample `k`, from a local
/// hyperbola (gap^2 quadratic in z0) refined by golden-section search.
fn refine_gap(z: &[f64], gap: &[f64], k: usize) -> Option<(f64, f64, f64)> {
    let zz = [z[k - 1], z[k], z[k + 1]];
    let g2 = [gap[k - 1].powi(2), gap[k].powi(2), gap[k + 1].powi(2)];
    let (_, _, a) = parabola(zz, g2)?;
    let model = |x: f64| {
        // Lagrange form of the same parabola, evaluated directly
        let l0 = (x - zz[1]) * (x - zz[2]) / ((zz[0] - zz[1]) * (zz[0] - zz[2]));
        let l1 = (x - zz[0]) * (x - zz[2]) / ((zz[1] - zz[0]) * (zz[1] - zz[2]));
        let l2 = (x - zz[0]) * (x - zz[1]) / ((zz[2] - zz[0]) * (zz[2] - zz[1]));
        (l0 * g2[0] + l1 * g2[1] + l2 * g2[2]).max(0.0).sqrt()
    };
    let tol = 1e-9 * (zz[2] - zz[0]);
    let zc = golden_min(model, zz[0], zz[2], tol);
    Some((zc, model(zc), a.sqrt()))
}

/// Curvature at a crossing: the local fit when the branch is sampled densely
/// enough inside the crossing width, otherwise the hyperbola value.
fn crossing_curvature(branch: &Branch, zc: f64, width: f64, hyperbola: f64) -> f64 {
    match derivative_estimates(branch, zc, 0.25 * width) {
        Ok(e) => e.curvature,
        Err(_) => hyperbola,
    }
}

/// Local minima of the separation of every branch pair that do not change
/// sign (a sign change is a true crossing) and across which the two
/// eigenvectors exchange character.
pub fn detect_avoided_crossings(branches: &[Branch]) -> Vec<AvoidedCrossing> {
    find_crossings(branches, true)
}

/// Character exchange of a branch pair across `zc`. The rotation of each
/// eigenvector towards the other is accumulated step by step from one width
/// before the gap to one width after it (at least one sample either side);
/// an isolated pair rotates by 45 degrees over that span.
/// Summing steps rather than comparing the end points keeps transfers relayed
/// through a third branch from counting; taking the larger of the two
/// directions tolerates a third branch passing through the gap. Plain dot
/// products suffice: the metric differs from the identity only by the
/// relative wavenumber spread.
fn exchanges(upper: &Branch, lower: &Branch, zc: f64, width: f64) -> bool {
    let n = upper.samples.len();
    let reach = width;
    let before = upper.samples.partition_point(|s| s.z0 <= zc - reach).saturating_sub(1);
    let after = upper.samples.partition_point(|s| s.z0 < zc + reach).min(n - 1);
    if before >= after {
        return false;
    }
    let (mut into_lower, mut into_upper) = (0.0, 0.0);
    for k in before..after {
        let (u0, u1) = (&upper.samples[k].vector, &upper.samples[k + 1].vector);
        let (l0, l1) = (&lower.samples[k].vector, &lower.samples[k + 1].vector);
        into_lower += l0.dot(u1).clamp(-1.0, 1.0).asin();
        into_upper += u0.dot(l1).clamp(-1.0, 1.0).asin();
    }
    into_lower.abs().max(into_upper.abs()) >= EXCHANGE_THRESHOLD.asin()
}

/// Whether the separation one width either side of `zc` follows the
/// two-level hyperbola, which reaches sqrt(2) times the gap there. A shallow
/// minimum spanning other crossings fails this by a wide margin.
fn follows_hyperbola(z: &[f64], gap: &[f64], zc: f64, g: f64, width: f64) -> bool {
    let interp = |x: f64| {
        let k = z.partition_point(|&zi| zi <= x).clamp(1, z.len() - 1);
        let t = (x - z[k - 1]) / (z[k] - z[k - 1]);
        gap[k - 1] + t.clamp(0.0, 1.0) * (gap[k] - gap[k - 1])
    };
    let expected = std::f64::consts::SQRT_2 * g;
    [zc - width, zc + width].iter().all(|&x| {
        let r = interp(x) / expected;
        (1.0 / HYPERBOLA_TOLERANCE..=HYPERBOLA_TOLERANCE).contains(&r)
    })
}

/// Allowed factor between the measured and two-level separation one width
/// from a resolved crossing.
pub const HYPERBOLA_TOLERANCE: f64 = 2.0;

/// Minimum exchanged fraction (sine of the accumulated rotation) for a
/// separation minimum to count as an avoided crossing.
pub const EXCHANGE_THRESHOLD: f64 = 0.5;

fn find_crossings(branches: &[Branch], require_exchange: bool) -> Vec<AvoidedCrossing> {
    let mut out = Vec::new();
    if branches.len() < 2 {
        return out;
    }
    let n = branches[0].samples.len();
    if n < 3 || branches.iter().any(|b| b.samples.len() != n) {
        return out;
    }
    let z = branches[0].z0();
    let shifts: Vec<Vec<f64>> = branches.iter().map(|b| b.shifts()).collect();
    // separations at this level are round-off between degenerate branches
    let scale = shifts.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    let noise = DEGENERACY_TOLERANCE * scale;

    for a in 0..branches.len() {
        for b in (a + 1)..branches.len() {
            let diff: Vec<f64> = (0..n).map(|k| shifts[a][k] - shifts[b][k]).collect();
            let gap: Vec<f64> = diff.iter().map(|d| d.abs()).collect();
            for k in 1..n - 1 {
                if !(gap[k] < gap[k - 1] && gap[k] <= gap[k + 1]) || gap[k - 1].max(gap[k + 1]) <= noise {
                    continue;
                }
                if diff[k - 1].signum() != diff[k].signum() || diff[k + 1].signum() != diff[k].signum() {
                    continue;
                }
                let (hi, lo) = if diff[k] > 0.0 { (a, b) } else { (b, a) };
                let Some((zc, g, s)) = refine_gap(&z, &gap, k) else {
                    continue;
                };
                let width = if s > 0.0 { g / s } else { f64::INFINITY };
                let step = 0.5 * (z[k + 1] - z[k - 1]);
                let hyper = if g > 0.0 { s * s / (2.0 * g) } else { f64::INFINITY };
                let upper = &branches[hi];
                let lower = &branches[lo];
                if require_exchange
                    && (!exchanges(upper, lower, zc, width) || (width >= step && !follows_hyperbola(&z, &gap, zc, g, width)))
                {
                    continue;
                }
                let ku = upper.nearest(zc);
                out.push(AvoidedCrossing {
                    z0: zc,
                    gap: g,
                    curvature_upper: crossing_curvature(upper, zc, width, hyper),
                    curvature_lower: crossing_curvature(lower, zc, width, -hyper),
                    upper_branch: upper.id,
                    lower_branch: lower.id,
                    modes: (upper.samples[ku].dominant, lower.samples[ku].dominant),
                    gap_slope: s,
                    width,
                    resolved: width >= step,
                });
            }
        }
    }
    out.sort_by(|x, y| x.z0.total_cmp(&y.z0).then(x.upper_branch.cmp(&y.upper_branch)));
    out
}

/// Re-evaluates a crossing on densely resampled copies of its two branches.
pub fn refine_crossing(c: &AvoidedCrossing, upper: &Branch, lower: &Branch) -> AvoidedCrossing {
    let mut two = [upper.clone(), lower.clone()];
    two[0].id = 0;
    two[1].id = 1;
    // the dense window lies inside the crossing, so no exchange test
    let found = find_crossings(&two, false);
    let Some(best) = found.into_iter().min_by(|x, y| (x.z0 - c.z0).abs().total_cmp(&(y.z0 - c.z0).abs())) else {
        return c.clone();
    };
    AvoidedCrossing { upper_branch: c.upper_branch, lower_branch: c.lower_branch, resolved: c.resolved, ..best }
}

/// One row of the coupling table.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingReport {
    pub location: String,
    pub branch_id: usize,
    pub z0: f64,
    /// d nu / d z0, Hz/m
    pub slope: f64,
    /// d^2 nu / d z0^2, Hz/m^2
    pub curvature: f64,
    /// rad/s
    pub g0: f64,
    /// rad/s
    pub g2: f64,
}

impl CouplingReport {
    pub fn new(location: impl Into<String>, branch_id: usize, z0: f64, slope: f64, curvature: f64, ctx: &CouplingContext) -> Self {
        CouplingReport {
            location: location.into(),
            branch_id,
            z0,
            slope,
            curvature,
            g0: linear_coupling(2.0 * PI * slope, ctx),
            g2: quadratic_coupling(2.0 * PI * curvature, ctx),
        }
    }

    pub fn g0_over_2pi(&self) -> f64 {
        self.g0 / (2.0 * PI)
    }

    pub fn g2_over_2pi(&self) -> f64 {
        self.g2 / (2.0 * PI)
    }
}
