//! Explicit eigenvalues for the four-mode singlet + triplet problem, in the
//! row order (TEM00, TEM20, TEM11, TEM02).

use nalgebra::{DMatrix, Matrix3};

/// Characteristic cubic of the (TEM00, TEM20, TEM02) block when TEM11
/// decouples (no y tilt).
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSolution {
    /// a0 lambda^3 + a1 lambda^2 + a2 lambda + a3
    pub coefficients: [f64; 4],
    /// Descending.
    pub roots: [f64; 3],
    /// `lambda - 1` for each root, at full relative precision.
    pub root_excess: [f64; 3],
    /// (1 + V_33) / eta, the TEM11 eigenvalue.
    pub decoupled: f64,
    pub decoupled_excess: f64,
}

/// -det of [[d1 - x, v12, v14], [v12, d2 - eta x, v24], [v14, v24, d4 - eta x]]
/// as a cubic in x.
fn cubic(eta: f64, d1: f64, d2: f64, d4: f64, v12: f64, v14: f64, v24: f64) -> [f64; 4] {
    [
        eta * eta,
        -eta * (eta * d1 + d2 + d4),
        eta * d1 * d2 + eta * d1 * d4 + d2 * d4 - v24 * v24 - eta * (v12 * v12 + v14 * v14),
        -d1 * d2 * d4 + d1 * v24 * v24 + d4 * v12 * v12 + d2 * v14 * v14 - 2.0 * v12 * v14 * v24,
    ]
}

fn eval(c: &[f64; 4], x: f64) -> (f64, f64) {
    let p = ((c[0] * x + c[1]) * x + c[2]) * x + c[3];
    let dp = (3.0 * c[0] * x + 2.0 * c[1]) * x + c[2];
    (p, dp)
}

/// `v` is the 4x4 perturbation matrix, `eta_minus_one` the triplet's eta - 1.
pub fn singlet_triplet_cubic(v: &DMatrix<f64>, eta_minus_one: f64) -> CubicSolution {
    let eta = 1.0 + eta_minus_one;
    let (v12, v14, v24) = (v[(0, 1)], v[(0, 3)], v[(1, 3)]);
    let coefficients = cubic(eta, 1.0 + v[(0, 0)], 1.0 + v[(1, 1)], 1.0 + v[(3, 3)], v12, v14, v24);

    // Same cubic in mu = lambda - 1: the diagonal loses its unit part.
    let d1 = v[(0, 0)];
    let d2 = v[(1, 1)] - eta_minus_one;
    let d4 = v[(3, 3)] - eta_minus_one;
    let scale = [d1, d2, d4, v12, v14, v24].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut root_excess = [0.0; 3];
    if scale > 0.0 {
        let c = cubic(eta, d1 / scale, d2 / scale, d4 / scale, v12 / scale, v14 / scale, v24 / scale);
        // companion matrix of the monic cubic
        let (p, q, r) = (c[1] / c[0], c[2] / c[0], c[3] / c[0]);
        let comp = Matrix3::new(0.0, 0.0, -r, 1.0, 0.0, -q, 0.0, 1.0, -p);
        let ev = comp.complex_eigenvalues();
        for k in 0..3 {
            let mut x = ev[k].re;
            for _ in 0..3 {
                let (f, df) = eval(&c, x);
                if df == 0.0 {
                    break;
                }
                let step = f / df;
                if !step.is_finite() || step.abs() > 1e-3 * (1.0 + x.abs()) {
                    break;
                }
                x -= step;
            }
            root_excess[k] = x * scale;
        }
    }
    root_excess.sort_by(|a, b| b.total_cmp(a));
    let roots = root_excess.map(|m| 1.0 + m);
    let decoupled_excess = (v[(2, 2)] - eta_minus_one) / eta;
    CubicSolution { coefficients, roots, root_excess, decoupled: 1.0 + decoupled_excess, decoupled_excess }
}

/// Aligned membrane: `[lambda1, lambda2, lambda3, lambda4]` with the
/// degenerate pair first and the TEM00-like pair as `+/-` of the radical.
pub fn aligned_eigenvalues(v: &DMatrix<f64>, eta_minus_one: f64) -> [f64; 4] {
    aligned_excess(v, eta_minus_one).map(|m| 1.0 + m)
}

/// `lambda - 1` for the values of [`aligned_eigenvalues`], without the
/// rounding of the unit part.
pub fn aligned_excess(v: &DMatrix<f64>, eta_minus_one: f64) -> [f64; 4] {
    let eta = 1.0 + eta_minus_one;
    let (v11, v22, v12) = (v[(0, 0)], v[(1, 1)], v[(0, 1)]);
    // W22/eta - 1 and W11 - W22/eta without cancellation
    let d2 = (v22 - eta_minus_one) / eta;
    let diff = v11 - d2;
    let root = (diff * diff + 8.0 * v12 * v12 / eta).sqrt();
    let mean = 0.5 * (v11 + d2);
    [d2, d2, mean + 0.5 * root, mean - 0.5 * root]
}
