//! Finite matrices: Hilbert segments, Cholesky factors and operator Gramians.

mod cholesky;
mod gramians;
mod hilbert;

pub use cholesky::{
    cholesky_factor, cholesky_residual, exact_cholesky, exact_ldl, exact_pivoted_cholesky, pivoted_cholesky, ExactLdl,
    LowRankCholesky,
};
pub use gramians::{
    a_matrix, a_matrix_numeric, bh_matrix, bh_matrix_numeric, factorization_defect, j_matrix, j_matrix_numeric,
    legendre_gramian, legendre_orientation, qj_gramian, DiscretizationScheme, GridSpec,
};
pub use hilbert::{hilbert_segment, padded_difference, LinearOperator, PaddedHilbertDifference};
