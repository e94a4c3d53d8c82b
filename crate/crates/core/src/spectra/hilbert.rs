//! Spectra of `H_n` and of its Cholesky factor `L_n` at high relative accuracy.

use super::jacobi::symmetric_eigenvalues;
use super::result::{default_tolerance, SpectralResult};
use super::svd::singular_values;
use crate::discretize::{exact_pivoted_cholesky, hilbert_segment, pivoted_cholesky};
use crate::error::Result;
use crate::numerics::{DenseMatrix, PrecisionContext, Scalar};

/// `σ_i(L_n)` from the exactly computed, diagonally pivoted factor of `H_n`
/// (rounded once per entry) followed by one-sided Jacobi.
pub fn hilbert_factor_singular_values<S: Scalar>(n: usize, ctx: &PrecisionContext) -> Result<SpectralResult<S>> {
    let factor: DenseMatrix<S> = exact_pivoted_cholesky(&hilbert_segment(n)?)?.to_scalar(ctx);
    singular_values(&factor, ctx, &default_tolerance(ctx))
}

/// `σ_i(H_n) = σ_i(L_n)²`.
pub fn hilbert_singular_values<S: Scalar>(n: usize, ctx: &PrecisionContext) -> Result<SpectralResult<S>> {
    let f = hilbert_factor_singular_values::<S>(n, ctx)?;
    let values = f.values.iter().map(|v| v.clone().square()).collect();
    Ok(SpectralResult::new(values, f.iterations, f.residual, f.converged, ctx))
}

/// Leading `σ_i(L_n)` for `n` too large for exact elimination.
///
/// A greedy pivoted partial Cholesky `H_n ≈ P Pᵀ` of rank at most
/// `max_rank` is followed by Jacobi on the small Gram matrix `PᵀP`. The
/// trust floor is raised to cover the neglected remainder and the
/// absolute accuracy of the Gram eigenvalues.
pub fn hilbert_factor_singular_values_low_rank<S: Scalar>(
    n: usize,
    max_rank: usize,
    ctx: &PrecisionContext,
) -> Result<SpectralResult<S>> {
    let rel_tol = S::pow10(-2 * ctx.digits() as i32, ctx);
    let one = S::one(ctx);
    let lr = pivoted_cholesky(n, |i, j| one.clone() / S::from_i64((i + j + 1) as i64, ctx), max_rank, &rel_tol, ctx)?;
    let p = &lr.factor;
    let r = p.cols();
    let cols: Vec<Vec<S>> = (0..r).map(|k| p.column(k)).collect();
    let gram = DenseMatrix::from_fn(r, r, "PtP", |a, b| super::jacobi::dot(&cols[a], &cols[b], ctx));
    let eig = symmetric_eigenvalues(&gram, ctx, &default_tolerance(ctx))?;
    let values: Vec<S> = eig
        .values
        .iter()
        .map(|v| if v.is_sign_negative() { S::zero(ctx) } else { v.sqrt() })
        .collect();
    let top = eig.values.first().cloned().unwrap_or_else(|| S::zero(ctx));
    let gram_floor = (top * S::pow10(ctx.trust_exponent(), ctx)).sqrt();
    let remainder_floor = if lr.residual_trace.is_sign_negative() {
        S::zero(ctx)
    } else {
        lr.residual_trace.sqrt()
    };
    Ok(SpectralResult::new(values, eig.iterations, eig.residual, eig.converged, ctx)
        .with_floor(gram_floor.max_of(remainder_floor)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::BigFloat;

    #[test]
    fn h2_values() {
        let ctx = PrecisionContext::new(30).unwrap();
        let r = hilbert_singular_values::<BigFloat>(2, &ctx).unwrap();
        let s13 = BigFloat::from_i64(13, &ctx).sqrt();
        let six = BigFloat::from_i64(6, &ctx);
        let lo = (BigFloat::from_i64(4, &ctx) - &s13) / &six;
        assert!(((r.values[1].clone() - lo).abs().to_f64()) < 1e-30);
        let one = hilbert_singular_values::<BigFloat>(1, &ctx).unwrap();
        assert_eq!(one.values[0], 1);
    }

    #[test]
    fn low_rank_agrees_with_exact_route() {
        let ctx = PrecisionContext::new(60).unwrap();
        let exact = hilbert_factor_singular_values::<BigFloat>(60, &ctx).unwrap();
        let lr = hilbert_factor_singular_values_low_rank::<BigFloat>(60, 60, &ctx).unwrap();
        let count = lr.trusted_count();
        assert!(count >= 15, "{count}");
        for i in 0..count {
            let rel = ((lr.values[i].clone() - &exact.values[i]) / &exact.values[i]).abs().to_f64();
            let margin = (lr.trust_floor.clone() / &lr.values[i]).to_f64();
            assert!(rel <= 10.0 * margin * margin + 1e-55, "i={i} rel={rel:e}");
        }
    }
}
