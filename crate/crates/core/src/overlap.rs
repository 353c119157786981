//! Closed-form membrane perturbation matrix elements.
//!
//! The membrane is a slab of index `n_R` and thickness `L_d` centred on the
//! tilted plane `z_c = z0 + ax*x + ay*y`. Its matrix element between two
//! standing-wave modes splits into a sum over `s = +1` (sum of phases) and
//! `s = -1` (difference of phases). Each term reduces, to first order in
//! `z0/z_R` and the tilts, to products of the one-dimensional integrals
//! `J(m, n, c, q, d) = int exp(-x^2) (x - ic)^q H_m(sqrt(1+d)(x-ic)) H_n(sqrt(1-d)(x-ic)) dx`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modes::{factorial, CavityGeometry, ModeIndex, MAX_HERMITE_ORDER};
use crate::series::Series2;

pub const MAX_J_POWER: usize = 4;
/// Tilts above this are outside the perturbative regime; a warning is logged.
pub const DEFAULT_TILT_LIMIT: f64 = 5e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembraneState {
    pub thickness: f64,
    pub n_r: f64,
    pub n_i: f64,
    pub z0: f64,
    pub alpha_x: f64,
    pub alpha_y: f64,
}

impl MembraneState {
    pub fn validate(&self) -> Result<()> {
        if !(self.thickness > 0.0) {
            return Err(Error::Domain("membrane thickness must be positive".into()));
        }
        if !(self.n_r >= 1.0) {
            return Err(Error::Domain("membrane n_R must be >= 1".into()));
        }
        if !(self.n_i >= 0.0) {
            return Err(Error::Domain("membrane n_I must be >= 0".into()));
        }
        if !self.z0.is_finite() || !self.alpha_x.is_finite() || !self.alpha_y.is_finite() {
            return Err(Error::Domain("membrane position and tilts must be finite".into()));
        }
        if self.alpha_eff() >= 0.5 * PI {
            return Err(Error::Domain("membrane tilt must be below pi/2".into()));
        }
        Ok(())
    }

    /// Logs a warning and returns false when either tilt exceeds `limit`,
    /// beyond which the first-order expansion in the tilt is not trusted.
    pub fn check_tilt(&self, limit: f64) -> bool {
        let ok = self.alpha_x.abs().max(self.alpha_y.abs()) <= limit;
        if !ok {
            log::warn!("tilt ({}, {}) rad exceeds the perturbative threshold {} rad", self.alpha_x, self.alpha_y, limit);
        }
        ok
    }

    pub fn alpha_eff(&self) -> f64 {
        (self.alpha_x * self.alpha_x + self.alpha_y * self.alpha_y).sqrt()
    }

    /// Slab thickness along the cavity axis.
    pub fn corrected_thickness(&self) -> f64 {
        self.thickness / self.alpha_eff().cos()
    }

    pub fn zeta0(&self, geom: &CavityGeometry) -> f64 {
        self.z0 / geom.rayleigh_range()
    }

    pub fn at(&self, z0: f64) -> Self {
        MembraneState { z0, ..*self }
    }
}

/// `J = re - i*im`, following the sign convention of the integral above.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JValue {
    pub re: f64,
    pub im: f64,
}

impl JValue {
    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, -self.im)
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Gamma(j + 1/2)
fn gamma_half(j: usize) -> f64 {
    (0..j).fold(PI.sqrt(), |acc, i| acc * (i as f64 + 0.5))
}

/// Mixed derivative of the generating function, taken by truncated power
/// series arithmetic.
pub fn j_integral(m: usize, n: usize, c: f64, q: usize, delta: f64) -> Result<JValue> {
    if m > MAX_HERMITE_ORDER || n > MAX_HERMITE_ORDER {
        return Err(Error::Capability(format!(
            "J integral Hermite orders ({m}, {n}) exceed {MAX_HERMITE_ORDER}"
        )));
    }
    if q > MAX_J_POWER {
        return Err(Error::Capability(format!("J integral power {q} exceeds {MAX_J_POWER}")));
    }
    if !(delta.abs() < 1.0) || !c.is_finite() {
        return Err(Error::Domain(format!("J integral needs |delta| < 1 and finite c (delta = {delta}, c = {c})")));
    }
    let a = (1.0 + delta).sqrt();
    let b = (1.0 - delta).sqrt();
    let f = Series2::linear(m, n, a, b);
    // exp(-t1^2 - t2^2 + f^2) with the squares cancelled analytically
    let g = Series2::quadratic(m, n, delta, 2.0 * a * b, -delta).exp();
    let (cos, sin) = f.scale(2.0 * c).cos_sin();

    let mut fpow = vec![Series2::constant(m, n, 1.0)];
    for k in 1..=q {
        fpow.push(&fpow[k - 1] * &f);
    }
    // S_k(f) = sum_j C(k, 2j) Gamma(j + 1/2) f^(k - 2j)
    let s_poly = |k: usize| {
        let mut s = Series2::zero(m, n);
        for j in 0..=k / 2 {
            s = &s + &fpow[k - 2 * j].scale(binomial(k, 2 * j) * gamma_half(j));
        }
        s
    };
    let mut re_part = Series2::zero(m, n);
    let mut odd_part = Series2::zero(m, n);
    for k in 0..=q {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let term = s_poly(q - k).scale(binomial(q, k) * sign * c.powi(k as i32));
        if k % 2 == 0 {
            re_part = &re_part + &term;
        } else {
            odd_part = &odd_part + &term;
        }
    }
    let real = &(&cos * &re_part) - &(&sin * &odd_part);
    let imag = &(&sin * &re_part) + &(&cos * &odd_part);
    let scale = factorial(m as u32) * factorial(n as u32);
    let jr = (&g * &real).coeff(m, n) * scale;
    let ji = (&g * &imag).coeff(m, n) * scale;
    if !jr.is_finite() || !ji.is_finite() {
        return Err(Error::Capability(format!("J integral overflow at (m, n, c, q) = ({m}, {n}, {c}, {q})")));
    }
    Ok(JValue { re: jr, im: ji })
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// cos and sin of `pi * n / 2` for an integer `n`, exactly.
fn quarter_turn(n: i64) -> (f64, f64) {
    match n.rem_euclid(4) {
        0 => (1.0, 0.0),
        1 => (0.0, 1.0),
        2 => (-1.0, 0.0),
        _ => (0.0, -1.0),
    }
}

/// The `z0`-independent part of one `s` term.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTerm {
    pub s: i8,
    /// K^(s)
    pub k: f64,
    /// Delta K^(s)
    pub delta_k: f64,
    /// `2 * ell^(s)`, an integer.
    pub two_ell: i64,
    pub x1: f64,
    gamma00: Complex64,
    g_zeta: Complex64,
    g_tilt: Complex64,
}

impl PhaseTerm {
    /// Re I^(s) at the given `z0 / z_R`.
    pub fn real_part(&self, zeta0: f64) -> f64 {
        let (cl, sl) = quarter_turn(self.two_ell);
        let phase = 2.0 * self.k * zeta0;
        let (sp, cp) = phase.sin_cos();
        let cos_x2 = cp * cl - sp * sl;
        let sin_x2 = sp * cl + cp * sl;
        let corr = self.g_zeta * zeta0 + self.g_tilt;
        let a = self.gamma00.re + self.delta_k * corr.im;
        let b = self.gamma00.im - self.delta_k * corr.re;
        // Re[exp(-i x2) * (Gamma00 - i dK G)] with Gamma = re + i im
        self.x1 * (cos_x2 * a + sin_x2 * b)
    }
}

/// Everything about a mode pair that does not depend on the axial position.
#[derive(Debug, Clone, PartialEq)]
pub struct PairContext {
    pub i: ModeIndex,
    pub j: ModeIndex,
    /// (k_i - k_j) / (k_i + k_j)
    pub delta: f64,
    /// (k_i + k_j) z_R / 2
    pub kappa_plus: f64,
    /// (k_i - k_j) z_R / 2
    pub kappa_minus: f64,
    pub m_plus: f64,
    pub m_minus: f64,
    pub n_plus: f64,
    pub n_minus: f64,
    /// Tilts in units of the pair's transverse scale.
    pub alpha_x: f64,
    pub alpha_y: f64,
    pub terms: [PhaseTerm; 2],
    index_factor: f64,
}

impl PairContext {
    pub fn new(i: ModeIndex, j: ModeIndex, mem: &MembraneState, geom: &CavityGeometry) -> Result<Self> {
        mem.validate()?;
        let zr = geom.rayleigh_range();
        let ki = geom.wavenumber(&i);
        let kj = geom.wavenumber(&j);
        let dk = geom.wavenumber_difference(&i, &j);
        let delta = dk / (ki + kj);
        let kappa_plus = 0.5 * (ki + kj) * zr;
        let kappa_minus = 0.5 * dk * zr;
        let (mi, mj, ni, nj) = (i.m as f64, j.m as f64, i.n as f64, j.n as f64);
        let (m_plus, m_minus) = (0.5 * (mi + mj), 0.5 * (mi - mj));
        let (n_plus, n_minus) = (0.5 * (ni + nj), 0.5 * (ni - nj));
        let alpha_x = mem.alpha_x / kappa_plus.sqrt();
        let alpha_y = mem.alpha_y / kappa_plus.sqrt();
        let t = mem.corrected_thickness();
        let norm = (PI * PI
            * 2f64.powi((i.m + j.m + i.n + j.n) as i32)
            * factorial(i.m)
            * factorial(j.m)
            * factorial(i.n)
            * factorial(j.n))
        .sqrt()
        .recip();

        let mut ctx = PairContext {
            i,
            j,
            delta,
            kappa_plus,
            kappa_minus,
            m_plus,
            m_minus,
            n_plus,
            n_minus,
            alpha_x,
            alpha_y,
            terms: [PhaseTerm::empty(1), PhaseTerm::empty(-1)],
            index_factor: mem.n_r * mem.n_r - 1.0,
        };
        for (slot, s) in [(0usize, 1i8), (1, -1)] {
            let (k, delta_k) = if s == 1 {
                (kappa_plus - (m_plus + n_plus + 1.0), 1.0)
            } else {
                (kappa_minus - (m_minus + n_minus), delta)
            };
            let two_ell = (i.l as i64 - 1) + s as i64 * (j.l as i64 - 1);
            let x1 = norm
                * (t / geom.length())
                * sinc(k * t / zr)
                * (-k * k * (alpha_x * alpha_x + alpha_y * alpha_y)).exp();
            let gamma = |q, p| ctx.gamma_for(k, q, p);
            let gamma00 = gamma(0, 0)?;
            let g_zeta = gamma(0, 2)? + gamma(2, 0)?;
            let g_x = gamma(1, 2)? + gamma(3, 0)?;
            let g_y = gamma(2, 1)? + gamma(0, 3)?;
            let g_tilt = g_x * alpha_x + g_y * alpha_y;
            ctx.terms[slot] = PhaseTerm { s, k, delta_k, two_ell, x1, gamma00, g_zeta, g_tilt };
        }
        Ok(ctx)
    }

    fn gamma_for(&self, k: f64, q: usize, p: usize) -> Result<Complex64> {
        let jx = j_integral(self.i.m as usize, self.j.m as usize, k * self.alpha_x, q, self.delta)?;
        let jy = j_integral(self.i.n as usize, self.j.n as usize, k * self.alpha_y, p, self.delta)?;
        Ok(jx.to_complex() * jy.to_complex())
    }

    pub fn term(&self, s: i8) -> &PhaseTerm {
        if s == 1 {
            &self.terms[0]
        } else {
            &self.terms[1]
        }
    }

    /// Gamma^(s)_{ij,qp}
    pub fn gamma(&self, s: i8, q: usize, p: usize) -> Result<Complex64> {
        self.gamma_for(self.term(s).k, q, p)
    }

    /// V_ij at axial position `zeta0 = z0 / z_R`.
    pub fn value(&self, zeta0: f64) -> f64 {
        if self.index_factor == 0.0 {
            return 0.0;
        }
        self.index_factor * (self.terms[0].real_part(zeta0) + self.terms[1].real_part(zeta0))
    }
}

impl PhaseTerm {
    fn empty(s: i8) -> Self {
        let z = Complex64::new(0.0, 0.0);
        PhaseTerm { s, k: 0.0, delta_k: 0.0, two_ell: 0, x1: 0.0, gamma00: z, g_zeta: z, g_tilt: z }
    }
}

pub fn gamma_coefficient(pair: &PairContext, s: i8, q: usize, p: usize) -> Result<Complex64> {
    pair.gamma(s, q, p)
}

/// Closed-form V_ij for the membrane state `mem`.
pub fn matrix_element(i: &ModeIndex, j: &ModeIndex, mem: &MembraneState, geom: &CavityGeometry) -> Result<f64> {
    let ctx = PairContext::new(*i, *j, mem, geom)?;
    Ok(ctx.value(mem.zeta0(geom)))
}
