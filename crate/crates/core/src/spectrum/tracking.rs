//! Continuation of eigenpairs along z0 by eigenvector overlap.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::spectrum::eigen::SpectrumPoint;

#[derive(Debug, Clone, PartialEq)]
pub struct BranchSample {
    pub z0: f64,
    pub lambda: f64,
    pub excess: f64,
    /// Hz
    pub shift: f64,
    pub vector: DVector<f64>,
    /// Row of the largest B-weighted component.
    pub dominant: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub id: usize,
    pub samples: Vec<BranchSample>,
}

impl Branch {
    pub fn z0(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.z0).collect()
    }

    pub fn shifts(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.shift).collect()
    }

    /// Index of the sample nearest to `z0`.
    pub fn nearest(&self, z0: f64) -> usize {
        let i = self.samples.partition_point(|s| s.z0 < z0);
        if i == 0 {
            0
        } else if i == self.samples.len() {
            i - 1
        } else if (self.samples[i].z0 - z0).abs() < (z0 - self.samples[i - 1].z0).abs() {
            i
        } else {
            i - 1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackingOptions {
    /// Minimum overlap for an unambiguous continuation.
    pub overlap_threshold: f64,
    pub max_depth: u32,
}

impl Default for TrackingOptions {
    fn default() -> Self {
        TrackingOptions { overlap_threshold: 0.5, max_depth: 12 }
    }
}

pub fn b_inner(a: &DVector<f64>, b: &DVector<f64>, metric: &DVector<f64>) -> f64 {
    a.iter().zip(b.iter()).zip(metric.iter()).map(|((x, y), w)| x * w * y).sum()
}

pub fn dominant_row(v: &DVector<f64>, metric: &DVector<f64>) -> usize {
    let mut best = 0;
    let mut wmax = -1.0;
    for i in 0..v.len() {
        let w = metric[i] * v[i] * v[i];
        if w > wmax {
            wmax = w;
            best = i;
        }
    }
    best
}

struct Assignment {
    /// eigen index for each branch
    order: Vec<usize>,
    vectors: Vec<DVector<f64>>,
    ambiguous: bool,
}

fn degeneracy_tolerance(pt: &SpectrumPoint) -> f64 {
    let scale = pt.excess.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    1e-9 * scale
}

/// Matches the eigenpairs of `next` to the branch vectors `prev`.
fn assign(prev: &[DVector<f64>], next: &SpectrumPoint, metric: &DVector<f64>, threshold: f64) -> Assignment {
    let n = next.len();
    let mut vecs = next.eigenvectors.clone();

    // Exactly degenerate groups have no preferred basis; rotate each onto
    // the previous vectors it spans (orthogonal Procrustes).
    let tol = degeneracy_tolerance(next);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (next.excess[end - 1] - next.excess[end]).abs() <= tol {
            end += 1;
        }
        let k = end - start;
        if k > 1 {
            let mut weight: Vec<(f64, usize)> = (0..prev.len())
                .map(|b| {
                    let w: f64 = (start..end).map(|j| b_inner(&prev[b], &vecs[j], metric).powi(2)).sum();
                    (w, b)
                })
                .collect();
            weight.sort_by(|a, b| b.0.total_cmp(&a.0));
            let chosen: Vec<usize> = weight.iter().take(k).map(|x| x.1).collect();
            // M[a][c] = <cluster_a, prev_chosen_c>
            let m = DMatrix::from_fn(k, k, |a, c| b_inner(&vecs[start + a], &prev[chosen[c]], metric));
            let svd = m.svd(true, true);
            if let (Some(u), Some(vt)) = (svd.u, svd.v_t) {
                let r = u * vt;
                let old: Vec<DVector<f64>> = vecs[start..end].to_vec();
                for c in 0..k {
                    let mut v = DVector::zeros(old[0].len());
                    for a in 0..k {
                        v += &old[a] * r[(a, c)];
                    }
                    vecs[start + c] = v;
                }
            }
        }
        start = end;
    }

    let overlap = DMatrix::from_fn(prev.len(), n, |b, j| b_inner(&prev[b], &vecs[j], metric).abs());
    let mut cells: Vec<(f64, usize, usize)> = Vec::with_capacity(prev.len() * n);
    for b in 0..prev.len() {
        for j in 0..n {
            cells.push((overlap[(b, j)], b, j));
        }
    }
    cells.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut order = vec![usize::MAX; prev.len()];
    let mut taken = vec![false; n];
    for &(_, b, j) in &cells {
        if order[b] == usize::MAX && !taken[j] {
            order[b] = j;
            taken[j] = true;
        }
    }
    let mut ambiguous = false;
    for b in 0..prev.len() {
        let j = order[b];
        if overlap[(b, j)] < threshold {
            ambiguous = true;
        }
        for jj in 0..n {
            if jj != j && overlap[(b, jj)] >= threshold {
                ambiguous = true;
            }
        }
    }
    let vectors = (0..prev.len())
        .map(|b| {
            let v = &vecs[order[b]];
            if b_inner(&prev[b], v, metric) < 0.0 {
                -v
            } else {
                v.clone()
            }
        })
        .collect();
    Assignment { order, vectors, ambiguous }
}

/// Sequential continuation with local refinement. `solve` computes the
/// spectrum at an inserted z0.
pub struct Tracker<'a, F> {
    metric: &'a DVector<f64>,
    solve: F,
    opts: TrackingOptions,
    branches: Vec<Branch>,
    current: Vec<DVector<f64>>,
}

impl<'a, F> Tracker<'a, F>
where
    F: Fn(f64) -> Result<SpectrumPoint>,
{
    /// Branch ids follow the eigenvalue order at `first` (descending lambda,
    /// i.e. ascending frequency shift).
    pub fn start(first: &SpectrumPoint, metric: &'a DVector<f64>, solve: F, opts: TrackingOptions) -> Self {
        let mut tr = Tracker { metric, solve, opts, branches: Vec::new(), current: Vec::new() };
        for k in 0..first.len() {
            tr.branches.push(Branch { id: k, samples: Vec::new() });
        }
        let order: Vec<usize> = (0..first.len()).collect();
        tr.push(first, &order, first.eigenvectors.clone());
        tr
    }

    /// Continues from explicitly given branch vectors (e.g. a sample of an
    /// existing branch set) without recording them.
    pub fn resume(current: Vec<DVector<f64>>, ids: Vec<usize>, metric: &'a DVector<f64>, solve: F, opts: TrackingOptions) -> Self {
        let branches = ids.into_iter().map(|id| Branch { id, samples: Vec::new() }).collect();
        Tracker { metric, solve, opts, branches, current }
    }

    fn push(&mut self, pt: &SpectrumPoint, order: &[usize], vectors: Vec<DVector<f64>>) {
        for (b, v) in vectors.iter().enumerate() {
            let j = order[b];
            self.branches[b].samples.push(BranchSample {
                z0: pt.z0,
                lambda: pt.eigenvalues[j],
                excess: pt.excess[j],
                shift: pt.shifts[j],
                vector: v.clone(),
                dominant: dominant_row(v, self.metric),
            });
        }
        self.current = vectors;
    }

    pub fn advance(&mut self, prev_z: f64, next: &SpectrumPoint) -> Result<()> {
        self.advance_depth(prev_z, next, 0)
    }

    fn advance_depth(&mut self, prev_z: f64, next: &SpectrumPoint, depth: u32) -> Result<()> {
        let a = assign(&self.current, next, self.metric, self.opts.overlap_threshold);
        if !a.ambiguous {
            self.push(next, &a.order, a.vectors);
            return Ok(());
        }
        if depth >= self.opts.max_depth {
            return Err(Error::TrackingAmbiguity { start: prev_z, end: next.z0 });
        }
        let zm = 0.5 * (prev_z + next.z0);
        let mid = (self.solve)(zm)?;
        self.advance_depth(prev_z, &mid, depth + 1)?;
        self.advance_depth(zm, next, depth + 1)
    }

    pub fn current(&self) -> &[DVector<f64>] {
        &self.current
    }

    pub fn finish(self) -> Vec<Branch> {
        self.branches
    }
}

/// Orders the eigenpairs of a sorted z0 scan into continuous branches,
/// bisecting intervals where the overlap assignment is ambiguous.
pub fn track_branches<F>(points: &[SpectrumPoint], metric: &DVector<f64>, solve: F, opts: TrackingOptions) -> Result<Vec<Branch>>
where
    F: Fn(f64) -> Result<SpectrumPoint>,
{
    let Some(first) = points.first() else {
        return Ok(Vec::new());
    };
    let mut tr = Tracker::start(first, metric, solve, opts);
    for w in points.windows(2) {
        tr.advance(w[0].z0, &w[1])?;
    }
    Ok(tr.finish())
}
