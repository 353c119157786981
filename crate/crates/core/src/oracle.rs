//! Reference values by direct numerical integration of the defining
//! integrals. Slow; used to validate the closed forms, never in scans.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modes::{hermite_unchecked, mode_field, CavityGeometry, ModeIndex, MAX_HERMITE_ORDER};
use crate::overlap::{JValue, MembraneState, MAX_J_POWER};
use crate::quadrature::{gauss_legendre, integrate_vec};

/// J by adaptive quadrature over |x| <= 8. Returns the value and the L1
/// norm of the integrand, which sets the scale of the attainable accuracy.
pub fn j_integral_quadrature_with_scale(m: usize, n: usize, c: f64, q: usize, delta: f64) -> Result<(JValue, f64)> {
    if m > MAX_HERMITE_ORDER || n > MAX_HERMITE_ORDER || q > MAX_J_POWER {
        return Err(Error::Capability(format!("oracle orders ({m}, {n}, {q}) out of range")));
    }
    let a = (1.0 + delta).sqrt();
    let b = (1.0 - delta).sqrt();
    let v = integrate_vec(
        |x, out| {
            let w = Complex64::new(x, -c);
            let val = w.powu(q as u32) * hermite_complex(m, w * a) * hermite_complex(n, w * b) * (-x * x).exp();
            out[0] = val.re;
            out[1] = val.im;
            out[2] = val.norm();
        },
        -8.0,
        8.0,
        3,
        1e-10,
        0.0,
    )?;
    // J = J^R - i J^I
    Ok((JValue { re: v[0], im: -v[1] }, v[2]))
}

pub fn j_integral_quadrature(m: usize, n: usize, c: f64, q: usize, delta: f64) -> Result<JValue> {
    j_integral_quadrature_with_scale(m, n, c, q, delta).map(|(j, _)| j)
}

fn hermite_complex(m: usize, x: Complex64) -> Complex64 {
    let mut prev = Complex64::new(1.0, 0.0);
    if m == 0 {
        return prev;
    }
    let mut cur = x * 2.0;
    for k in 1..m {
        let next = x * cur * 2.0 - prev * (2.0 * k as f64);
        prev = cur;
        cur = next;
    }
    cur
}

/// V for every pair of `modes` by integrating the product of standing-wave
/// fields over the tilted slab: 32-point Gauss-Legendre across the slab,
/// nested adaptive quadrature over |x|, |y| <= 6 w(z0).
pub fn perturbation_matrix_quadrature(
    modes: &[ModeIndex],
    mem: &MembraneState,
    geom: &CavityGeometry,
    rel_tol: f64,
) -> Result<DMatrix<f64>> {
    mem.validate()?;
    let nm = modes.len();
    for md in modes {
        if md.m > 4 || md.n > 4 {
            return Err(Error::Capability("slab quadrature is limited to m, n <= 4".into()));
        }
    }
    let npairs = nm * (nm + 1) / 2;
    let (gx, gw) = gauss_legendre(32);
    let t = mem.corrected_thickness();
    let half = 0.5 * t;
    let extent = 6.0 * modes.iter().map(|md| geom.beam_radius(md, mem.z0)).fold(0.0, f64::max);

    let mut err = None;
    let mut field = vec![0.0; nm];
    let mut inner = |x: f64, out_x: &mut [f64]| {
        let r = integrate_vec(
            |y, out| {
                out.iter_mut().for_each(|o| *o = 0.0);
                let zc = mem.z0 + mem.alpha_x * x + mem.alpha_y * y;
                for (node, w) in gx.iter().zip(&gw) {
                    let z = zc + half * node;
                    for (k, md) in modes.iter().enumerate() {
                        match mode_field(md, 1, (x, y, z), geom) {
                            Ok(f) => field[k] = 2.0 * f.rho * f.theta.cos(),
                            Err(e) => {
                                err.get_or_insert(e);
                                field[k] = 0.0;
                            }
                        }
                    }
                    let mut p = 0;
                    for a in 0..nm {
                        for b in a..nm {
                            out[p] += w * half * field[a] * field[b];
                            p += 1;
                        }
                    }
                }
            },
            -extent,
            extent,
            npairs,
            0.1 * rel_tol,
            0.0,
        );
        match r {
            Ok(v) => out_x.copy_from_slice(&v),
            Err(e) => {
                out_x.iter_mut().for_each(|o| *o = 0.0);
                err.get_or_insert(e);
            }
        }
    };
    let v = integrate_vec(&mut inner, -extent, extent, npairs, rel_tol, 0.0);
    if let Some(e) = err {
        return Err(e);
    }
    let v = v?;
    // normalized standing waves are (phi+ + phi-)/sqrt(2)
    let factor = 0.5 * (mem.n_r * mem.n_r - 1.0);
    let mut out = DMatrix::zeros(nm, nm);
    let mut p = 0;
    for a in 0..nm {
        for b in a..nm {
            out[(a, b)] = factor * v[p];
            out[(b, a)] = factor * v[p];
            p += 1;
        }
    }
    Ok(out)
}

pub fn matrix_element_quadrature(i: &ModeIndex, j: &ModeIndex, mem: &MembraneState, geom: &CavityGeometry) -> Result<f64> {
    let m = perturbation_matrix_quadrature(&[*i, *j], mem, geom, 1e-6)?;
    Ok(m[(0, 1)])
}

/// Hermite-Gauss standing-wave product integrated over a full transverse
/// plane at fixed z; separable, so done as two 1-D integrals.
pub fn transverse_overlap(a: &ModeIndex, b: &ModeIndex, z: f64, geom: &CavityGeometry) -> Result<(f64, f64)> {
    let wa = geom.beam_radius(a, z);
    let wb = geom.beam_radius(b, z);
    let zeta = z / geom.rayleigh_range();
    let extent = 8.0 * wa.max(wb);
    let sqrt2 = std::f64::consts::SQRT_2;
    // returns (integral of rho_a rho_b cos(phi_r), ... sin(phi_r)) for one axis
    let axis = |ma: usize, mb: usize| {
        integrate_vec(
            |x, out| {
                let ha = hermite_unchecked(ma, sqrt2 * x / wa) * (-x * x / (wa * wa)).exp();
                let hb = hermite_unchecked(mb, sqrt2 * x / wb) * (-x * x / (wb * wb)).exp();
                let phase = x * x * zeta * (1.0 / (wa * wa) - 1.0 / (wb * wb));
                out[0] = ha * hb * phase.cos();
                out[1] = ha * hb * phase.sin();
            },
            -extent,
            extent,
            2,
            1e-12,
            0.0,
        )
    };
    let ax = axis(a.m as usize, b.m as usize)?;
    let ay = axis(a.n as usize, b.n as usize)?;
    let cx = Complex64::new(ax[0], ax[1]);
    let cy = Complex64::new(ay[0], ay[1]);
    let prod = cx * cy;
    Ok((prod.re, prod.im))
}
