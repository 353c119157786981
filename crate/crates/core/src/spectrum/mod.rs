//! Generalized eigenproblem over a basis of near-degenerate mode families.

pub mod basis;
pub mod closed_form;
pub mod eigen;
pub mod system;
pub mod tracking;

pub use basis::{Family, ModeBasis};
pub use eigen::{solve_eigenvalues, EigenPair, SpectrumPoint};
pub use system::{build_system, PerturbationModel, PerturbationSystem};
pub use tracking::{track_branches, Branch, BranchSample, TrackingOptions};
