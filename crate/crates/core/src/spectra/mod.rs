//! Precision-configurable spectral engine.

mod hilbert;
mod jacobi;
mod power;
mod result;
mod svd;

pub use hilbert::{hilbert_factor_singular_values, hilbert_factor_singular_values_low_rank, hilbert_singular_values};
pub use jacobi::{symmetric_eigenvalues, MAX_SWEEPS};
pub use power::{top_singular_pair, TopSingularPair, DEFAULT_MAX_ITER};
pub use result::{default_tolerance, SpectralResult};
pub use svd::{singular_values, singular_vector, SingularVectors};
