//! Optical spectrum of a Fabry-Perot cavity perturbed by a thin, tilted
//! dielectric membrane, and the optomechanical couplings derived from it.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coupling;
pub mod config;
pub mod error;
pub mod modes;
pub mod oracle;
pub mod output;
pub mod overlap;
pub mod quadrature;
pub mod scan;
pub mod series;
pub mod spectrum;
pub mod units;

pub use error::{Error, Result};
