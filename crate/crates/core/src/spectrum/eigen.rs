use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::spectrum::system::PerturbationSystem;
use crate::units::SPEED_OF_LIGHT;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub lambda: f64,
    /// lambda - 1, kept at full relative precision
    pub excess: f64,
    /// B-normalized coefficient vector
    pub vector: DVector<f64>,
}

/// All generalized eigenpairs, sorted by descending lambda.
///
/// With `mu = lambda - 1` the problem is `(V + 1 - eta) c = mu eta c`; the
/// symmetric reduction `B^-1/2 (...) B^-1/2` is diagonalized instead of
/// `B^-1/2 A B^-1/2` so that the small scale is resolved.
pub fn solve_eigenvalues(sys: &PerturbationSystem) -> Result<Vec<EigenPair>> {
    let n = sys.dim();
    let inv_sqrt = sys.eta.map(|e| e.sqrt().recip());
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = sys.v[(i, j)] * inv_sqrt[i] * inv_sqrt[j];
        }
        m[(i, i)] -= sys.eta_minus_one[i] / sys.eta[i];
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::Eigen { message: "non-finite matrix entries".into(), residual: f64::NAN });
    }
    let (values, vectors) = jacobi_eigen(m)
        .ok_or_else(|| Error::Eigen { message: "Jacobi iteration did not converge".into(), residual: f64::NAN })?;

    let mut pairs: Vec<EigenPair> = (0..n)
        .map(|k| {
            let u = vectors.column(k);
            let vector = DVector::from_iterator(n, (0..n).map(|i| u[i] * inv_sqrt[i]));
            let excess = values[k];
            EigenPair { lambda: 1.0 + excess, excess, vector }
        })
        .collect();
    pairs.sort_by(|a, b| b.excess.total_cmp(&a.excess));

    let scale = 1.0 + sys.v.abs().max();
    for p in &pairs {
        let r = residual(sys, p);
        if !(r <= 1e-10 * scale) {
            return Err(Error::Eigen { message: format!("residual too large for lambda = {}", p.lambda), residual: r });
        }
        if p.lambda <= 0.0 {
            return Err(Error::UnphysicalEigenvalue(p.lambda));
        }
    }
    Ok(pairs)
}

/// Cyclic Jacobi diagonalization of a symmetric matrix. Unlike QR-type
/// solvers it keeps small eigenvalues of nearly diagonal matrices to high
/// relative accuracy, which is the regime of the perturbation matrices.
pub fn jacobi_eigen(mut a: DMatrix<f64>) -> Option<(DVector<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    let mut v = DMatrix::<f64>::identity(n, n);
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[(p, p)], a[(q, q)]);
                if apq.abs() <= 0.5 * f64::EPSILON * (app.abs() * aqq.abs()).sqrt().max(f64::MIN_POSITIVE) {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                rotated = true;
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + theta.hypot(1.0))
                };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                let tau = s / (1.0 + c);
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for r in 0..n {
                    if r != p && r != q {
                        let (arp, arq) = (a[(r, p)], a[(r, q)]);
                        let np = arp - s * (arq + tau * arp);
                        let nq = arq + s * (arp - tau * arq);
                        a[(r, p)] = np;
                        a[(p, r)] = np;
                        a[(r, q)] = nq;
                        a[(q, r)] = nq;
                    }
                    let (vrp, vrq) = (v[(r, p)], v[(r, q)]);
                    v[(r, p)] = vrp - s * (vrq + tau * vrp);
                    v[(r, q)] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
        if !rotated {
            return Some((a.diagonal(), v));
        }
    }
    None
}

/// ||(A - lambda B) c||
pub fn residual(sys: &PerturbationSystem, p: &EigenPair) -> f64 {
    (sys.shifted(p.excess) * &p.vector).norm()
}

/// Number of eigenvalues with `lambda - 1 < mu`, from the inertia of
/// `A - (1 + mu) B` via an unpivoted LDL^T factorization.
fn count_below(sys: &PerturbationSystem, mu: f64) -> usize {
    let d = sys.shifted(mu);
    let n = sys.dim();
    let tiny = f64::EPSILON * (1e-300 + d.abs().max());
    let mut l = DMatrix::<f64>::zeros(n, n);
    let mut piv = vec![0.0; n];
    let mut negative = 0;
    for j in 0..n {
        let mut dj = d[(j, j)];
        for k in 0..j {
            dj -= l[(j, k)] * l[(j, k)] * piv[k];
        }
        if dj.abs() < tiny {
            dj = -tiny;
        }
        piv[j] = dj;
        if dj < 0.0 {
            negative += 1;
        }
        for i in (j + 1)..n {
            let mut s = d[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)] * piv[k];
            }
            l[(i, j)] = s / dj;
        }
    }
    negative
}

/// Eigenvalues by Sylvester-inertia bisection on `det(A - lambda B)`,
/// descending. Independent of the symmetric eigensolver.
pub fn eigenvalues_by_bisection(sys: &PerturbationSystem) -> Vec<f64> {
    excess_by_bisection(sys).into_iter().map(|mu| 1.0 + mu).collect()
}

pub fn excess_by_bisection(sys: &PerturbationSystem) -> Vec<f64> {
    let n = sys.dim();
    // Gershgorin bound for B^-1 (V + 1 - eta)
    let mut bound: f64 = 0.0;
    for i in 0..n {
        let row: f64 = (0..n).map(|j| sys.v[(i, j)].abs()).sum::<f64>() + sys.eta_minus_one[i].abs();
        bound = bound.max(row / sys.eta[i]);
    }
    let bound = 2.0 * bound + 1e-300;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        // k-th smallest: smallest mu with count_below(mu) >= k + 1
        let (mut lo, mut hi) = (-bound, bound);
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if count_below(sys, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    out.reverse();
    out
}

pub fn reference_frequency(k1: f64) -> f64 {
    SPEED_OF_LIGHT * k1 / (2.0 * PI)
}

/// `nu_ref (lambda^-1/2 - 1)` evaluated from `lambda - 1`.
pub fn frequency_shift_from_excess(excess: f64, nu_ref: f64) -> Result<f64> {
    if !(excess > -1.0) {
        return Err(Error::UnphysicalEigenvalue(1.0 + excess));
    }
    Ok(nu_ref * (-0.5 * excess.ln_1p()).exp_m1())
}

pub fn frequency_shifts(lambdas: &[f64], k1: f64) -> Result<Vec<f64>> {
    let nu = reference_frequency(k1);
    lambdas.iter().map(|&l| frequency_shift_from_excess(l - 1.0, nu)).collect()
}

/// Solution of the eigenproblem at one axial position.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumPoint {
    pub z0: f64,
    pub eigenvalues: Vec<f64>,
    pub excess: Vec<f64>,
    /// Hz, relative to the unperturbed reference mode
    pub shifts: Vec<f64>,
    pub eigenvectors: Vec<DVector<f64>>,
}

impl SpectrumPoint {
    pub fn from_pairs(z0: f64, pairs: Vec<EigenPair>, k1: f64) -> Result<Self> {
        let nu = reference_frequency(k1);
        let mut pt = SpectrumPoint { z0, eigenvalues: vec![], excess: vec![], shifts: vec![], eigenvectors: vec![] };
        for p in pairs {
            pt.shifts.push(frequency_shift_from_excess(p.excess, nu)?);
            pt.eigenvalues.push(p.lambda);
            pt.excess.push(p.excess);
            pt.eigenvectors.push(p.vector);
        }
        Ok(pt)
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(v: DMatrix<f64>, etam1: Vec<f64>) -> PerturbationSystem {
        PerturbationSystem::new(v, DVector::from_vec(etam1)).unwrap()
    }

    #[test]
    fn unperturbed_limit() {
        let e = 2.5e-7;
        let s = sys(DMatrix::zeros(3, 3), vec![0.0, e, e]);
        let p = solve_eigenvalues(&s).unwrap();
        assert_eq!(p[0].lambda, 1.0);
        let expect = 1.0 / (1.0 + e);
        assert!((p[1].lambda - expect).abs() < 1e-15 && (p[2].lambda - expect).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_closed_form() {
        let v = DMatrix::from_row_slice(2, 2, &[0.001, 1e-4, 1e-4, -0.001]);
        let s = sys(v, vec![0.0, 0.0]);
        let p = solve_eigenvalues(&s).unwrap();
        let r = (1e-6f64 + 1e-8).sqrt();
        assert!((p[0].lambda - (1.0 + r)).abs() < 1e-15);
        assert!((p[1].lambda - (1.0 - r)).abs() < 1e-15);
        let b = eigenvalues_by_bisection(&s);
        assert!((b[0] - p[0].lambda).abs() < 1e-14 && (b[1] - p[1].lambda).abs() < 1e-14);
    }

    #[test]
    fn b_orthonormal_vectors() {
        let v = DMatrix::from_row_slice(3, 3, &[1e-6, 2e-7, -1e-7, 2e-7, 3e-7, 5e-8, -1e-7, 5e-8, -2e-7]);
        let s = sys(v, vec![0.0, -2e-7, 4e-7]);
        let p = solve_eigenvalues(&s).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let ip: f64 = (0..3).map(|i| p[a].vector[i] * s.eta[i] * p[b].vector[i]).sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((ip - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn jacobi_clustered_diagonal() {
        // nearly diagonal with a tight cluster and tiny couplings
        let d = [1.5e-6, 3.05e-6, 3.05e-6 + 1e-18, 2.5e-6];
        let mut m = DMatrix::from_diagonal(&DVector::from_row_slice(&d));
        m[(0, 1)] = 1e-14;
        m[(1, 0)] = 1e-14;
        m[(1, 2)] = 3e-18;
        m[(2, 1)] = 3e-18;
        let (w, v) = jacobi_eigen(m.clone()).unwrap();
        for k in 0..4 {
            let u = v.column(k);
            assert!((&m * u - u * w[k]).norm() <= 1e-22, "{k}");
        }
        assert!((v.transpose() * &v - DMatrix::identity(4, 4)).abs().max() < 1e-15);
    }

    #[test]
    fn shift_conventions() {
        let nu = 2.8e14;
        assert_eq!(frequency_shift_from_excess(0.0, nu).unwrap(), 0.0);
        let eps = 1e-8;
        let d = frequency_shift_from_excess(eps, nu).unwrap();
        assert!((d / (-nu * eps / 2.0) - 1.0).abs() < 0.01);
        assert!(frequency_shifts(&[0.0], 1.0).is_err());
        assert!(frequency_shifts(&[-1.0], 1.0).is_err());
    }
}
