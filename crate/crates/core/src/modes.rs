//! Hermite-Gauss modes of the empty symmetric cavity.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::units::SPEED_OF_LIGHT;

pub const MAX_HERMITE_ORDER: usize = 12;

/// Longitudinal index `l` and transverse orders `m`, `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    pub l: u64,
    pub m: u32,
    pub n: u32,
}

impl ModeIndex {
    pub fn new(l: u64, m: u32, n: u32) -> Result<Self> {
        if l < 1 {
            return Err(Error::Domain("longitudinal index must be >= 1".into()));
        }
        Ok(ModeIndex { l, m, n })
    }

    pub fn order(&self) -> u32 {
        self.m + self.n
    }

    /// The same mode with transverse indices exchanged.
    pub fn transposed(&self) -> Self {
        ModeIndex { l: self.l, m: self.n, n: self.m }
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TEM{}{}@{}", self.m, self.n, self.l)
    }
}

/// Physicists' Hermite polynomial by the three-term recurrence.
pub fn hermite_polynomial(m: usize, x: f64) -> Result<f64> {
    if m > MAX_HERMITE_ORDER {
        return Err(Error::UnsupportedOrder { order: m, max: MAX_HERMITE_ORDER });
    }
    Ok(hermite_unchecked(m, x))
}

pub(crate) fn hermite_unchecked(m: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..m {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Symmetric two-mirror cavity with its reference wavelength.
#[derive(Debug, Clone, PartialEq)]
pub struct CavityGeometry {
    length: f64,
    mirror_radius: f64,
    wavelength: f64,
    g: f64,
    rayleigh_range: f64,
    gouy: f64,
    l_ref: u64,
}

impl CavityGeometry {
    pub fn new(length: f64, mirror_radius: f64, wavelength: f64) -> Result<Self> {
        if !(length > 0.0) || !(mirror_radius > 0.0) || !(wavelength > 0.0) {
            return Err(Error::Domain("cavity length, mirror radius and wavelength must be positive".into()));
        }
        let g = 1.0 - length / mirror_radius;
        if !(g * g > 0.0 && g * g < 1.0) {
            return Err(Error::UnstableCavity { g });
        }
        let rayleigh_range = 0.5 * length * ((1.0 + g) / (1.0 - g)).sqrt();
        let gouy = g.acos();
        let l = (2.0 * length / wavelength - gouy / PI).round();
        if l < 1.0 {
            return Err(Error::Domain(format!("wavelength {wavelength} too long for cavity length {length}")));
        }
        Ok(CavityGeometry { length, mirror_radius, wavelength, g, rayleigh_range, gouy, l_ref: l as u64 })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn mirror_radius(&self) -> f64 {
        self.mirror_radius
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn rayleigh_range(&self) -> f64 {
        self.rayleigh_range
    }

    /// arccos(g), the round-trip Gouy phase per transverse order divided by two.
    pub fn gouy_angle(&self) -> f64 {
        self.gouy
    }

    /// Longitudinal index of the TEM00 mode nearest the reference wavelength.
    pub fn reference_index(&self) -> u64 {
        self.l_ref
    }

    pub fn reference_mode(&self) -> ModeIndex {
        ModeIndex { l: self.l_ref, m: 0, n: 0 }
    }

    pub fn wavenumber(&self, mode: &ModeIndex) -> f64 {
        (PI / self.length) * (mode.l as f64 + (mode.order() + 1) as f64 * self.gouy / PI)
    }

    /// k_a - k_b without cancellation against the large common part.
    pub fn wavenumber_difference(&self, a: &ModeIndex, b: &ModeIndex) -> f64 {
        let dl = a.l as f64 - b.l as f64;
        let dorder = a.order() as f64 - b.order() as f64;
        (PI / self.length) * (dl + dorder * self.gouy / PI)
    }

    pub fn frequency(&self, mode: &ModeIndex) -> f64 {
        SPEED_OF_LIGHT * self.wavenumber(mode) / (2.0 * PI)
    }

    /// Frequency of the reference TEM00 mode; shifts are reported against it.
    pub fn reference_frequency(&self) -> f64 {
        self.frequency(&self.reference_mode())
    }

    pub fn waist(&self, mode: &ModeIndex) -> f64 {
        (2.0 * self.rayleigh_range / self.wavenumber(mode)).sqrt()
    }

    pub fn beam_radius(&self, mode: &ModeIndex, z: f64) -> f64 {
        let zeta = z / self.rayleigh_range;
        self.waist(mode) * (1.0 + zeta * zeta).sqrt()
    }
}

/// Amplitude and phase of a running-wave component, `rho * exp(-s i theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeField {
    pub rho: f64,
    pub theta: f64,
    pub s: i8,
}

impl ModeField {
    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(1.0, -(self.s as f64) * self.theta) * self.rho
    }
}

/// Evaluates `rho` and `theta` of a mode. `rho` carries the Hermite sign
/// structure and is normalized so that the integral of `rho^2` over the
/// cavity volume is one.
pub fn mode_field(mode: &ModeIndex, s: i8, point: (f64, f64, f64), geom: &CavityGeometry) -> Result<ModeField> {
    let (x, y, z) = point;
    if z.abs() > 0.5 * geom.length() {
        return Err(Error::Domain(format!("z = {z} lies outside the cavity")));
    }
    if s != 1 && s != -1 {
        return Err(Error::Domain("conjugation flag must be +1 or -1".into()));
    }
    let (m, n) = (mode.m as usize, mode.n as usize);
    if m.max(n) > MAX_HERMITE_ORDER {
        return Err(Error::UnsupportedOrder { order: m.max(n), max: MAX_HERMITE_ORDER });
    }

    let zr = geom.rayleigh_range();
    let zeta = z / zr;
    let w = geom.beam_radius(mode, z);
    let r2 = (x * x + y * y) / (w * w);
    let sqrt2 = std::f64::consts::SQRT_2;
    let norm = (PI * 2f64.powi((m + n) as i32 - 1) * factorial(mode.m) * factorial(mode.n) * geom.length())
        .sqrt()
        .recip();
    let rho = norm / w
        * hermite_unchecked(m, sqrt2 * x / w)
        * hermite_unchecked(n, sqrt2 * y / w)
        * (-r2).exp();
    let theta = geom.wavenumber(mode) * z - (mode.order() + 1) as f64 * zeta.atan()
        + r2 * zeta
        + (mode.l as f64 - 1.0) * PI / 2.0;
    Ok(ModeField { rho, theta, s })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom() -> CavityGeometry {
        CavityGeometry::new(0.09, 0.10, 1064e-9).unwrap()
    }

    #[test]
    fn hermite_low_orders() {
        assert_eq!(hermite_polynomial(0, 3.7).unwrap(), 1.0);
        assert!((hermite_polynomial(1, 0.7).unwrap() - 1.4).abs() < 1e-15);
        assert!((hermite_polynomial(3, 0.5).unwrap() + 5.0).abs() < 1e-14);
        assert!(matches!(hermite_polynomial(13, 0.1), Err(Error::UnsupportedOrder { .. })));
    }

    #[test]
    fn hermite_parity() {
        for m in 0..=MAX_HERMITE_ORDER {
            for i in 0..=40 {
                let x = -5.0 + 0.25 * i as f64;
                let a = hermite_polynomial(m, -x).unwrap();
                let b = hermite_polynomial(m, x).unwrap();
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert!((a - sign * b).abs() <= 1e-12 * b.abs().max(1.0));
            }
        }
    }

    #[test]
    fn derived_geometry() {
        let g = geom();
        assert!((g.g() - 0.1).abs() < 1e-15);
        let zr = 0.045 * (1.1f64 / 0.9).sqrt();
        assert!((g.rayleigh_range() - zr).abs() / zr < 1e-12);
        let mode = g.reference_mode();
        let w0 = (g.wavelength_for(&mode) * zr / PI).sqrt();
        assert!((g.waist(&mode) - w0).abs() / w0 < 1e-12);
        assert_eq!(g.reference_index(), 169172);
    }

    impl CavityGeometry {
        fn wavelength_for(&self, mode: &ModeIndex) -> f64 {
            2.0 * PI / self.wavenumber(mode)
        }
    }

    #[test]
    fn unstable_rejected() {
        assert!(matches!(CavityGeometry::new(0.09, 0.04, 1064e-9), Err(Error::UnstableCavity { .. })));
        assert!(CavityGeometry::new(0.09, 0.045, 1064e-9).is_err());
    }

    #[test]
    fn wavenumber_formula() {
        let g = geom();
        let mode = ModeIndex::new(169168, 0, 0).unwrap();
        let expect = (PI / 0.09) * (169168.0 + 0.1f64.acos() / PI);
        assert!((g.wavenumber(&mode) - expect).abs() / expect < 1e-15);
        let l = g.reference_index();
        let a = g.wavenumber(&ModeIndex { l, m: 2, n: 0 });
        assert_eq!(a, g.wavenumber(&ModeIndex { l, m: 1, n: 1 }));
        assert_eq!(a, g.wavenumber(&ModeIndex { l, m: 0, n: 2 }));
        let spacing = g.wavenumber_difference(&ModeIndex { l: l - 1, m: 2, n: 0 }, &g.reference_mode());
        let expect = (PI / 0.09) * (2.0 * 0.1f64.acos() / PI - 1.0);
        assert!(spacing < 0.0);
        assert!((spacing - expect).abs() / expect.abs() < 1e-12);
    }

    #[test]
    fn field_at_origin_and_conjugation() {
        let g = geom();
        let mode = g.reference_mode();
        let f = mode_field(&mode, 1, (0.0, 0.0, 0.0), &g).unwrap();
        let rho = 1.0 / (g.waist(&mode) * (PI * 0.5 * g.length()).sqrt());
        assert!((f.rho - rho).abs() / rho < 1e-14);
        assert!((f.theta - (mode.l as f64 - 1.0) * PI / 2.0).abs() < 1e-9);

        let p = (3e-5, -2e-5, 0.004);
        let m = ModeIndex { l: mode.l - 1, m: 2, n: 1 };
        let a = mode_field(&m, 1, p, &g).unwrap().value();
        let b = mode_field(&m, -1, p, &g).unwrap().value();
        assert!((a - b.conj()).norm() <= 1e-14 * a.norm());
        assert!(mode_field(&m, 1, (0.0, 0.0, 0.046), &g).is_err());
    }

    #[test]
    fn standing_wave_vanishes_at_mirrors() {
        let g = geom();
        for mode in [g.reference_mode(), ModeIndex { l: g.reference_index() - 1, m: 2, n: 0 }] {
            for z in [-0.045, 0.045] {
                let f = mode_field(&mode, 1, (0.0, 0.0, z), &g).unwrap();
                assert!(f.theta.cos().abs() < 1e-6, "cos theta = {}", f.theta.cos());
            }
        }
    }
}
