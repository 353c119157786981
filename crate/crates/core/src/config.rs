//! Scan configuration: TOML text, SI units, every key optional.
//!
//! ```toml
//! [cavity]
//! length = 0.09
//! mirror_radius = 0.10
//! wavelength = 1064e-9
//!
//! [membrane]
//! thickness = 50e-9
//! n_r = 2.1
//! n_i = 1e-6
//! alpha_x = -0.21e-3
//! alpha_y = 0.15e-3
//!
//! [membrane.z0]
//! center = 0.5e-3      # or explicit min / max
//! steps = 1001
//!
//! [basis]
//! families = [{ order = 0, l_offset = 0 }, { order = 2, l_offset = -1 }]
//!
//! [mechanics]
//! mass = 34e-12
//! angular_frequency = 2.387610416e6
//! theta = 1.0
//!
//! [analysis]
//! crossings = true
//! fit_window = 21.28e-9
//!
//! [output]
//! directory = "out"
//! ```

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modes::{CavityGeometry, MAX_HERMITE_ORDER};
use crate::overlap::{MembraneState, DEFAULT_TILT_LIMIT};
use crate::spectrum::basis::ModeBasis;
use crate::spectrum::tracking::TrackingOptions;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CavityConfig {
    pub length: f64,
    pub mirror_radius: f64,
    pub wavelength: f64,
}

impl Default for CavityConfig {
    fn default() -> Self {
        CavityConfig { length: 0.09, mirror_radius: 0.10, wavelength: 1064e-9 }
    }
}

/// Axial sampling. Without `min`/`max` the range is `center +/- wavelength/4`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ZRange {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
    pub center: f64,
    pub steps: usize,
}

impl Default for ZRange {
    fn default() -> Self {
        ZRange { min: None, max: None, center: 0.0, steps: 1001 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MembraneConfig {
    pub thickness: f64,
    pub n_r: f64,
    pub n_i: f64,
    pub alpha_x: f64,
    pub alpha_y: f64,
    pub z0: ZRange,
}

impl Default for MembraneConfig {
    fn default() -> Self {
        MembraneConfig { thickness: 50e-9, n_r: 2.1, n_i: 1e-6, alpha_x: 0.0, alpha_y: 0.0, z0: ZRange::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    /// m + n
    pub order: u32,
    /// Longitudinal index relative to the reference mode.
    #[serde(default)]
    pub l_offset: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BasisConfig {
    pub families: Vec<FamilySpec>,
}

impl Default for BasisConfig {
    fn default() -> Self {
        BasisConfig {
            families: vec![
                FamilySpec { order: 0, l_offset: 0 },
                FamilySpec { order: 2, l_offset: -1 },
                FamilySpec { order: 4, l_offset: -2 },
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MechanicsConfig {
    pub mass: f64,
    pub angular_frequency: f64,
    pub theta: f64,
}

impl Default for MechanicsConfig {
    fn default() -> Self {
        MechanicsConfig { mass: 34e-12, angular_frequency: 2.0 * PI * 380e3, theta: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub crossings: bool,
    pub extrema: bool,
    /// Half-width of the local derivative fit; defaults to 0.02 wavelength.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_window: Option<f64>,
    pub refinement_depth: u32,
    pub overlap_threshold: f64,
    pub tilt_limit: f64,
    /// Samples in the dense resampling around each crossing.
    pub crossing_samples: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            crossings: true,
            extrema: true,
            fit_window: None,
            refinement_depth: 12,
            overlap_threshold: 0.5,
            tilt_limit: DEFAULT_TILT_LIMIT,
            crossing_samples: 41,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub directory: String,
    pub formats: Vec<String>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { directory: "out".into(), formats: vec!["csv".into()] }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    pub cavity: CavityConfig,
    pub membrane: MembraneConfig,
    pub basis: BasisConfig,
    pub mechanics: MechanicsConfig,
    pub analysis: AnalysisConfig,
    pub output: OutputConfig,
}

fn positive(field: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("must be positive and finite, got {x}")))
    }
}

fn finite(field: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(field, "must be finite"))
    }
}

pub fn parse_config(text: &str) -> Result<ScanConfig> {
    let cfg: ScanConfig = toml::from_str(text).map_err(|e| Error::ConfigSyntax(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        let c = &self.cavity;
        positive("cavity.length", c.length)?;
        positive("cavity.mirror_radius", c.mirror_radius)?;
        positive("cavity.wavelength", c.wavelength)?;
        if let Err(Error::UnstableCavity { g }) = CavityGeometry::new(c.length, c.mirror_radius, c.wavelength) {
            return Err(Error::invalid(
                "cavity.mirror_radius",
                format!("cavity is not stable: g = 1 - L/R = {g}, stability requires 0 < g^2 < 1"),
            ));
        }

        let m = &self.membrane;
        positive("membrane.thickness", m.thickness)?;
        if !(m.n_r >= 1.0 && m.n_r.is_finite()) {
            return Err(Error::invalid("membrane.n_r", format!("must be >= 1, got {}", m.n_r)));
        }
        if !(m.n_i >= 0.0 && m.n_i.is_finite()) {
            return Err(Error::invalid("membrane.n_i", format!("must be >= 0, got {}", m.n_i)));
        }
        finite("membrane.alpha_x", m.alpha_x)?;
        finite("membrane.alpha_y", m.alpha_y)?;
        if m.alpha_x.hypot(m.alpha_y) >= 0.5 * PI {
            return Err(Error::invalid("membrane.alpha_x", "total tilt must be below pi/2"));
        }
        finite("membrane.z0.center", m.z0.center)?;
        if m.z0.min.is_some() != m.z0.max.is_some() {
            return Err(Error::invalid("membrane.z0", "min and max must be given together"));
        }
        if m.z0.steps < 2 {
            return Err(Error::invalid("membrane.z0.steps", format!("need at least 2 samples, got {}", m.z0.steps)));
        }
        let (lo, hi) = self.z0_range();
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(Error::invalid("membrane.z0", format!("range [{lo}, {hi}] is empty or not finite")));
        }
        if lo.abs().max(hi.abs()) > 0.5 * c.length {
            return Err(Error::invalid("membrane.z0", "range must lie inside the cavity"));
        }

        if self.basis.families.is_empty() {
            return Err(Error::invalid("basis.families", "at least one family is required"));
        }
        for (i, f) in self.basis.families.iter().enumerate() {
            if f.order as usize > MAX_HERMITE_ORDER {
                return Err(Error::invalid(
                    &format!("basis.families[{i}].order"),
                    format!("order {} exceeds the supported maximum {MAX_HERMITE_ORDER}", f.order),
                ));
            }
        }
        let geom = self.geometry()?;
        ModeBasis::from_orders(&geom, &self.family_specs()).map_err(|e| Error::invalid("basis.families", e.to_string()))?;

        let k = &self.mechanics;
        positive("mechanics.mass", k.mass)?;
        positive("mechanics.angular_frequency", k.angular_frequency)?;
        if !(0.0..=1.0).contains(&k.theta) {
            return Err(Error::invalid("mechanics.theta", format!("must lie in [0, 1], got {}", k.theta)));
        }

        let a = &self.analysis;
        if let Some(w) = a.fit_window {
            positive("analysis.fit_window", w)?;
        }
        if !(a.overlap_threshold > 0.0 && a.overlap_threshold < 1.0) {
            return Err(Error::invalid("analysis.overlap_threshold", "must lie in (0, 1)"));
        }
        positive("analysis.tilt_limit", a.tilt_limit)?;
        if a.crossing_samples < 9 {
            return Err(Error::invalid("analysis.crossing_samples", "need at least 9 samples for the local fit"));
        }
        if a.refinement_depth > 40 {
            return Err(Error::invalid("analysis.refinement_depth", "at most 40"));
        }

        for f in &self.output.formats {
            if f != "csv" {
                return Err(Error::invalid("output.formats", format!("unsupported format `{f}` (only csv)")));
            }
        }
        self.membrane_state(0.5 * (lo + hi)).check_tilt(a.tilt_limit);
        Ok(())
    }

    pub fn geometry(&self) -> Result<CavityGeometry> {
        CavityGeometry::new(self.cavity.length, self.cavity.mirror_radius, self.cavity.wavelength)
    }

    pub fn family_specs(&self) -> Vec<(u32, i64)> {
        self.basis.families.iter().map(|f| (f.order, f.l_offset)).collect()
    }

    pub fn basis(&self) -> Result<ModeBasis> {
        ModeBasis::from_orders(&self.geometry()?, &self.family_specs())
    }

    pub fn membrane_state(&self, z0: f64) -> MembraneState {
        let m = &self.membrane;
        MembraneState { thickness: m.thickness, n_r: m.n_r, n_i: m.n_i, z0, alpha_x: m.alpha_x, alpha_y: m.alpha_y }
    }

    pub fn z0_range(&self) -> (f64, f64) {
        let r = &self.membrane.z0;
        match (r.min, r.max) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                let q = 0.25 * self.cavity.wavelength;
                (r.center - q, r.center + q)
            }
        }
    }

    /// Evenly spaced samples including both ends.
    pub fn z0_grid(&self) -> Vec<f64> {
        let (lo, hi) = self.z0_range();
        let n = self.membrane.z0.steps;
        (0..n).map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect()
    }

    pub fn fit_window(&self) -> f64 {
        self.analysis.fit_window.unwrap_or(0.02 * self.cavity.wavelength)
    }

    pub fn tracking_options(&self) -> TrackingOptions {
        TrackingOptions { overlap_threshold: self.analysis.overlap_threshold, max_depth: self.analysis.refinement_depth }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).unwrap_or_default()
    }
}
