//! Exact rationals, configurable-precision scalars and dense matrices.

mod matrix;
mod precision;
mod rational;
mod scalar;
mod surd;

pub use matrix::DenseMatrix;
pub use precision::{PrecisionContext, PrecisionMode, HARDWARE_MAX_DIGITS};
pub use rational::Rational;
pub use scalar::{format_sci, to_scalar, BigFloat, Scalar};
pub use surd::Surd;

pub use rug::Integer;
