use super::jacobi::dot;
use crate::discretize::LinearOperator;
use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Scalar};

pub const DEFAULT_MAX_ITER: usize = 100_000;

#[derive(Clone, Debug)]
pub struct TopSingularPair<S> {
    pub sigma: S,
    /// Unit right singular vector estimate.
    pub vector: Vec<S>,
    pub iterations: usize,
    pub converged: bool,
}

fn normalize<S: Scalar>(v: &mut [S], ctx: &PrecisionContext) -> S {
    let norm = dot(v, v, ctx).sqrt();
    if !norm.is_zero() {
        v.iter_mut().for_each(|x| *x /= &norm);
    }
    norm
}

/// Power iteration on `mᵀm` from the all-ones vector.
///
/// Stops once successive Rayleigh quotients agree to `tol` (relative). If
/// `max_iter` runs out, the last estimate is returned with
/// `converged = false`.
pub fn top_singular_pair<S: Scalar, Op: LinearOperator<S> + ?Sized>(
    op: &Op,
    tol: &S,
    max_iter: usize,
    ctx: &PrecisionContext,
) -> Result<TopSingularPair<S>> {
    let n = op.cols();
    if n == 0 || op.rows() == 0 {
        return Err(Error::InvalidArgument("empty operator".into()));
    }
    let mut x = vec![S::one(ctx); n];
    normalize(&mut x, ctx);
    let mut y = op.apply(&x, ctx);
    if dot(&y, &y, ctx).is_zero() {
        // All-ones start orthogonal to the row space: retry from e_1.
        x = vec![S::zero(ctx); n];
        x[0] = S::one(ctx);
        y = op.apply(&x, ctx);
        if dot(&y, &y, ctx).is_zero() {
            return Ok(TopSingularPair {
                sigma: S::zero(ctx),
                vector: x,
                iterations: 0,
                converged: true,
            });
        }
    }
    let mut previous = dot(&y, &y, ctx);
    for iteration in 1..=max_iter {
        let mut z = op.apply_transpose(&y, ctx);
        normalize(&mut z, ctx);
        x = z;
        y = op.apply(&x, ctx);
        let rayleigh = dot(&y, &y, ctx);
        if !rayleigh.is_finite() {
            return Err(Error::NonFinite { op: "top_singular_pair" });
        }
        let change = (rayleigh.clone() - &previous).abs();
        if change <= tol.clone() * &rayleigh {
            return Ok(TopSingularPair {
                sigma: rayleigh.sqrt(),
                vector: x,
                iterations: iteration,
                converged: true,
            });
        }
        previous = rayleigh;
    }
    Ok(TopSingularPair {
        sigma: previous.sqrt(),
        vector: x,
        iterations: max_iter,
        converged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretize::PaddedHilbertDifference;
    use crate::numerics::DenseMatrix;

    #[test]
    fn diagonal() {
        let ctx = PrecisionContext::hardware();
        let d = DenseMatrix::from_rows(vec![vec![3.0, 0.0], vec![0.0, 1.0]], "d").unwrap();
        let p = top_singular_pair(&d, &1e-14, DEFAULT_MAX_ITER, &ctx).unwrap();
        assert!(p.converged);
        assert!((p.sigma - 3.0).abs() < 1e-7);
    }

    #[test]
    fn zero_operator_short_circuits() {
        let ctx = PrecisionContext::hardware();
        let z = PaddedHilbertDifference::<f64>::new(5, 5, &ctx).unwrap();
        let p = top_singular_pair(&z, &1e-12, 10, &ctx).unwrap();
        assert_eq!(p.sigma, 0.0);
        assert_eq!(p.iterations, 0);
    }

    #[test]
    fn falls_back_when_ones_is_in_kernel() {
        let ctx = PrecisionContext::hardware();
        let m = DenseMatrix::from_rows(vec![vec![1.0, -1.0], vec![0.0, 0.0]], "m").unwrap();
        let p = top_singular_pair(&m, &1e-14, 100, &ctx).unwrap();
        assert!((p.sigma - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn reports_unconverged() {
        let ctx = PrecisionContext::hardware();
        let m = DenseMatrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 0.999]], "m").unwrap();
        let p = top_singular_pair(&m, &1e-16, 3, &ctx).unwrap();
        assert!(!p.converged);
        assert_eq!(p.iterations, 3);
    }
}
