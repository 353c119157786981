use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("Hermite order {order} exceeds the supported maximum {max}")]
    UnsupportedOrder { order: usize, max: usize },

    #[error("capability exceeded: {0}")]
    Capability(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unstable cavity: g = {g} (stability requires 0 < g^2 < 1)")]
    UnstableCavity { g: f64 },

    #[error("eigensolver failure: {message} (residual {residual:e})")]
    Eigen { message: String, residual: f64 },

    #[error("unphysical eigenvalue {0} (must be positive)")]
    UnphysicalEigenvalue(f64),

    #[error("branch tracking ambiguous between z0 = {start:e} m and z0 = {end:e} m")]
    TrackingAmbiguity { start: f64, end: f64 },

    #[error("derivative estimate at z0 = {z0:e} m has {found} samples in window, need {needed}")]
    InsufficientSamples { z0: f64, found: usize, needed: usize },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("config syntax error: {0}")]
    ConfigSyntax(String),

    #[error("invalid config value `{field}`: {reason}")]
    ConfigInvalid { field: String, reason: String },

    #[error("numerical failure at z0 = {z0:e} m: {source}")]
    NumericalAt {
        z0: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(field: &str, reason: impl Into<String>) -> Self {
        Error::ConfigInvalid { field: field.to_string(), reason: reason.into() }
    }

    pub(crate) fn at(z0: f64, source: Error) -> Self {
        match source {
            e @ Error::NumericalAt { .. } => e,
            e => Error::NumericalAt { z0, source: Box::new(e) },
        }
    }

    /// Process exit code for the CLI: 2 config, 3 numerical, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ConfigSyntax(_) | Error::ConfigInvalid { .. } | Error::UnstableCavity { .. } => 2,
            Error::Io { .. } => 4,
            _ => 3,
        }
    }
}
