#![allow(dead_code)]

use std::path::PathBuf;

use cavity_perturb::config::{parse_config, ScanConfig};
use cavity_perturb::modes::{hermite_polynomial, CavityGeometry, ModeIndex};
use cavity_perturb::overlap::MembraneState;
use cavity_perturb::quadrature::gauss_legendre;
use cavity_perturb::spectrum::ModeBasis;
use nalgebra::DMatrix;

pub const LENGTH: f64 = 0.09;
pub const RADIUS: f64 = 0.10;
pub const WAVELENGTH: f64 = 1064e-9;

pub fn geometry() -> CavityGeometry {
    CavityGeometry::new(LENGTH, RADIUS, WAVELENGTH).unwrap()
}

pub fn standard_basis() -> ModeBasis {
    ModeBasis::standard(&geometry()).unwrap()
}

/// Singlet + triplet in the row order used by the closed forms.
pub fn four_mode_basis() -> ModeBasis {
    ModeBasis::from_orders(&geometry(), &[(0, 0), (2, -1)]).unwrap()
}

pub fn membrane(z0: f64, alpha_x: f64, alpha_y: f64) -> MembraneState {
    MembraneState { thickness: 50e-9, n_r: 2.0, n_i: 1e-6, z0, alpha_x, alpha_y }
}

pub fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

pub fn load_config(name: &str) -> ScanConfig {
    parse_config(&std::fs::read_to_string(config_path(name)).unwrap()).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(a.abs()).max(f64::MIN_POSITIVE)
}

/// Normalized 2-D Hermite-Gauss function in units of w / sqrt(2).
pub fn hg(m: usize, n: usize, x: f64, y: f64) -> f64 {
    let f = |k: usize| (1..=k).product::<usize>() as f64;
    hermite_polynomial(m, x).unwrap() * hermite_polynomial(n, y).unwrap() * (-(x * x + y * y) / 2.0).exp()
        / (std::f64::consts::PI * 2f64.powi((m + n) as i32) * f(m) * f(n)).sqrt()
}

/// Change of transverse frame by `phi`: column j holds lab mode j expanded
/// in the modes of the frame whose x axis points along (cos phi, sin phi).
/// Computed by brute-force quadrature so it shares nothing with the library.
pub fn frame_rotation(modes: &[ModeIndex], phi: f64) -> DMatrix<f64> {
    let (xs, ws) = gauss_legendre(100);
    let (c, s) = (phi.cos(), phi.sin());
    let k = modes.len();
    let mut r = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            if modes[i].l != modes[j].l {
                continue;
            }
            let (mi, ni) = (modes[i].m as usize, modes[i].n as usize);
            let (mj, nj) = (modes[j].m as usize, modes[j].n as usize);
            let mut acc = 0.0;
            for (a, wa) in xs.iter().zip(&ws) {
                for (b, wb) in xs.iter().zip(&ws) {
                    let (xp, yp) = (8.0 * a, 8.0 * b);
                    let (x, y) = (c * xp - s * yp, s * xp + c * yp);
                    acc += 64.0 * wa * wb * hg(mi, ni, xp, yp) * hg(mj, nj, x, y);
                }
            }
            r[(i, j)] = acc;
        }
    }
    r
}

/// Angle of the tilt gradient in the transverse plane.
pub fn tilt_axis(mem: &MembraneState) -> f64 {
    mem.alpha_y.atan2(mem.alpha_x)
}
