use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::modes::CavityGeometry;
use crate::overlap::{MembraneState, PairContext};
use crate::spectrum::basis::ModeBasis;

/// `A c = lambda B c` with `A = 1 + V` and `B = diag(eta)`. `V` and
/// `eta - 1` are kept separately since all the structure of the problem sits
/// in quantities of order 1e-6 next to unity.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationSystem {
    pub v: DMatrix<f64>,
    pub eta: DVector<f64>,
    pub eta_minus_one: DVector<f64>,
}

impl PerturbationSystem {
    pub fn new(v: DMatrix<f64>, eta_minus_one: DVector<f64>) -> Result<Self> {
        let n = v.nrows();
        if n == 0 || v.ncols() != n || eta_minus_one.len() != n {
            return Err(Error::Domain("perturbation system needs a square V matching the metric".into()));
        }
        let eta = eta_minus_one.map(|e| 1.0 + e);
        if eta.iter().any(|&e| !(e > 0.0)) {
            return Err(Error::Domain("metric must be positive".into()));
        }
        Ok(PerturbationSystem { v, eta, eta_minus_one })
    }

    pub fn dim(&self) -> usize {
        self.v.nrows()
    }

    pub fn a(&self) -> DMatrix<f64> {
        &self.v + DMatrix::identity(self.dim(), self.dim())
    }

    pub fn b(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&self.eta)
    }

    /// `A - (1 + mu) B`, assembled without forming `1 + mu`.
    pub fn shifted(&self, mu: f64) -> DMatrix<f64> {
        let mut d = self.v.clone();
        for i in 0..self.dim() {
            d[(i, i)] -= self.eta_minus_one[i] + mu * self.eta[i];
        }
        d
    }
}

/// Precomputed pair contexts for one basis, geometry and membrane shape;
/// produces the system at any axial position cheaply.
#[derive(Debug, Clone)]
pub struct PerturbationModel {
    basis: ModeBasis,
    geom: CavityGeometry,
    membrane: MembraneState,
    pairs: Vec<PairContext>,
}

impl PerturbationModel {
    pub fn new(basis: ModeBasis, geom: CavityGeometry, membrane: MembraneState) -> Result<Self> {
        let modes = basis.modes();
        let mut pairs = Vec::with_capacity(modes.len() * (modes.len() + 1) / 2);
        for a in 0..modes.len() {
            for b in a..modes.len() {
                pairs.push(PairContext::new(modes[a], modes[b], &membrane, &geom)?);
            }
        }
        Ok(PerturbationModel { basis, geom, membrane, pairs })
    }

    pub fn basis(&self) -> &ModeBasis {
        &self.basis
    }

    pub fn geometry(&self) -> &CavityGeometry {
        &self.geom
    }

    pub fn membrane(&self) -> &MembraneState {
        &self.membrane
    }

    pub fn v_matrix(&self, z0: f64) -> DMatrix<f64> {
        let n = self.basis.len();
        let zeta0 = z0 / self.geom.rayleigh_range();
        let mut v = DMatrix::zeros(n, n);
        let mut p = 0;
        for a in 0..n {
            for b in a..n {
                let x = self.pairs[p].value(zeta0);
                v[(a, b)] = x;
                v[(b, a)] = x;
                p += 1;
            }
        }
        v
    }

    pub fn system_at(&self, z0: f64) -> Result<PerturbationSystem> {
        let eta_minus_one = DVector::from_iterator(self.basis.len(), (0..self.basis.len()).map(|r| self.basis.eta_minus_one(r)));
        PerturbationSystem::new(self.v_matrix(z0), eta_minus_one)
    }
}

pub fn build_system(basis: &ModeBasis, mem: &MembraneState, geom: &CavityGeometry) -> Result<PerturbationSystem> {
    PerturbationModel::new(basis.clone(), geom.clone(), *mem)?.system_at(mem.z0)
}
