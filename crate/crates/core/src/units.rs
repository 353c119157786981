//! Physical constants and the unit conversions used for emitted data.

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const HBAR: f64 = 1.054_571_817e-34;

pub const NM: f64 = 1e-9;
pub const MHZ: f64 = 1e6;

pub fn m_to_nm(x: f64) -> f64 {
    x / NM
}

pub fn nm_to_m(x: f64) -> f64 {
    x * NM
}

pub fn hz_to_mhz(x: f64) -> f64 {
    x / MHZ
}

pub fn mhz_to_hz(x: f64) -> f64 {
    x * MHZ
}

/// Hz/m -> MHz/nm
pub fn slope_to_mhz_per_nm(x: f64) -> f64 {
    x * NM / MHZ
}

pub fn slope_from_mhz_per_nm(x: f64) -> f64 {
    x * MHZ / NM
}

/// Hz/m^2 -> MHz/nm^2
pub fn curvature_to_mhz_per_nm2(x: f64) -> f64 {
    x * NM * NM / MHZ
}

pub fn curvature_from_mhz_per_nm2(x: f64) -> f64 {
    x * MHZ / (NM * NM)
}
