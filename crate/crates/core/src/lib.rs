//! Singular-value analysis of the Hausdorff moment operator and its Hilbert-matrix discretizations.

pub mod discretize;
pub mod error;
pub mod experiments;
pub mod numerics;
pub mod operators;
pub mod spectra;

pub use error::{Error, Result};
