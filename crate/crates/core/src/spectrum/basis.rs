use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::modes::{CavityGeometry, ModeIndex};

/// Modes sharing one wavenumber.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    pub modes: Vec<ModeIndex>,
    pub wavenumber: f64,
    /// k_f^2 / k_1^2
    pub eta: f64,
    /// eta - 1, computed without cancellation
    pub eta_minus_one: f64,
}

/// Ordered families of near-degenerate modes; the first is the reference.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeBasis {
    families: Vec<Family>,
    modes: Vec<ModeIndex>,
    family_of: Vec<usize>,
}

impl ModeBasis {
    pub fn new(families: Vec<Vec<ModeIndex>>, geom: &CavityGeometry) -> Result<Self> {
        if families.is_empty() || families.iter().any(|f| f.is_empty()) {
            return Err(Error::Domain("basis needs at least one non-empty family".into()));
        }
        let first = families[0][0];
        let k1 = geom.wavenumber(&first);
        let mut out = ModeBasis { families: Vec::new(), modes: Vec::new(), family_of: Vec::new() };
        for (fi, fam) in families.into_iter().enumerate() {
            let k = geom.wavenumber(&fam[0]);
            for md in &fam {
                if geom.wavenumber(md) != k {
                    return Err(Error::Domain(format!("{md} does not share the wavenumber of {}", fam[0])));
                }
                if out.modes.contains(md) {
                    return Err(Error::Domain(format!("{md} appears twice in the basis")));
                }
                out.modes.push(*md);
                out.family_of.push(fi);
            }
            let dk = geom.wavenumber_difference(&fam[0], &first);
            let eta_minus_one = dk * (k + k1) / (k1 * k1);
            out.families.push(Family { modes: fam, wavenumber: k, eta: k * k / (k1 * k1), eta_minus_one });
        }
        Ok(out)
    }

    /// All (m, n) with m + n = order at longitudinal index l_ref + l_offset,
    /// ordered by decreasing m.
    pub fn family_of_order(geom: &CavityGeometry, order: u32, l_offset: i64) -> Result<Vec<ModeIndex>> {
        let l = geom.reference_index() as i64 + l_offset;
        if l < 1 {
            return Err(Error::Domain(format!("longitudinal offset {l_offset} gives l < 1")));
        }
        Ok((0..=order).rev().map(|m| ModeIndex { l: l as u64, m, n: order - m }).collect())
    }

    pub fn from_orders(geom: &CavityGeometry, spec: &[(u32, i64)]) -> Result<Self> {
        let fams = spec
            .iter()
            .map(|&(order, off)| Self::family_of_order(geom, order, off))
            .collect::<Result<Vec<_>>>()?;
        Self::new(fams, geom)
    }

    /// Singlet, triplet and quintuplet: orders 0, 2, 4 at l, l-1, l-2.
    pub fn standard(geom: &CavityGeometry) -> Result<Self> {
        Self::from_orders(geom, &[(0, 0), (2, -1), (4, -2)])
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn modes(&self) -> &[ModeIndex] {
        &self.modes
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn family_index(&self, row: usize) -> usize {
        self.family_of[row]
    }

    pub fn eta(&self, row: usize) -> f64 {
        self.families[self.family_of[row]].eta
    }

    pub fn eta_minus_one(&self, row: usize) -> f64 {
        self.families[self.family_of[row]].eta_minus_one
    }

    /// Diagonal of the metric B.
    pub fn metric(&self) -> DVector<f64> {
        DVector::from_iterator(self.len(), (0..self.len()).map(|r| self.eta(r)))
    }

    pub fn reference_wavenumber(&self) -> f64 {
        self.families[0].wavenumber
    }

    pub fn index_of(&self, mode: &ModeIndex) -> Option<usize> {
        self.modes.iter().position(|m| m == mode)
    }

    /// Index of the mode with transverse indices swapped, if present.
    pub fn transpose_index(&self, row: usize) -> Option<usize> {
        self.index_of(&self.modes[row].transposed())
    }

    /// Metric-weighted share of each family in a coefficient vector.
    pub fn family_weights(&self, v: &DVector<f64>) -> Vec<f64> {
        let mut w = vec![0.0; self.families.len()];
        for (r, c) in v.iter().enumerate() {
            w[self.family_of[r]] += self.eta(r) * c * c;
        }
        w
    }

    /// Short label relative to the reference longitudinal index, e.g. `TEM20,p-1`.
    pub fn label(&self, row: usize) -> String {
        let md = &self.modes[row];
        let l0 = self.families[0].modes[0].l as i64;
        let off = md.l as i64 - l0;
        match off {
            0 => format!("TEM{}{},p", md.m, md.n),
            o if o > 0 => format!("TEM{}{},p+{}", md.m, md.n, o),
            o => format!("TEM{}{},p{}", md.m, md.n, o),
        }
    }
}
