//! Continuous-side mathematics of the moment operator `A = B∘J`.

mod analytic;
mod dilog;
mod grid;
mod kernel;
mod legendre;

pub use analytic::{j_singular_triple, j_singular_value, phi, SingularTriple};
pub use dilog::{dilog, dilog_series};
pub use grid::{cumulative_integral, hausdorff_moment, midpoint, GridFunction, PiecewiseLinear};
pub use kernel::{kernel_ds_partial_sum, kernel_k, kernel_series};
pub use legendre::{legendre, legendre_dot_monomial, LegendrePolynomial};
