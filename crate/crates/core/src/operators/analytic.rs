//! Closed-form facts about the integration operator and the Hilbert factor.

use super::grid::GridFunction;
use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Scalar};

/// `(σ_i, u_i, v_i)` of `J` with `J u_i = σ_i v_i`, the functions sampled at
/// cell midpoints.
#[derive(Clone, Debug)]
pub struct SingularTriple<S> {
    pub sigma: S,
    /// `√2 cos((i - 1/2) π t)`
    pub u: GridFunction<S>,
    /// `√2 sin((i - 1/2) π t)`
    pub v: GridFunction<S>,
}

pub fn j_singular_value<S: Scalar>(i: usize, ctx: &PrecisionContext) -> Result<S> {
    if i == 0 {
        return Err(Error::InvalidArgument("singular index starts at 1".into()));
    }
    Ok(S::from_i64(2, ctx) / (S::from_i64(2 * i as i64 - 1, ctx) * S::pi(ctx)))
}

pub fn j_singular_triple<S: Scalar>(i: usize, n: usize, ctx: &PrecisionContext) -> Result<SingularTriple<S>> {
    let sigma = j_singular_value(i, ctx)?;
    let freq = (S::from_i64(2 * i as i64 - 1, ctx) / S::from_i64(2, ctx)) * S::pi(ctx);
    let root2 = S::from_i64(2, ctx).sqrt();
    let u = GridFunction::sample_midpoints(n, ctx, |t| root2.clone() * (freq.clone() * t).cos())?;
    let v = GridFunction::sample_midpoints(n, ctx, |t| root2.clone() * (freq.clone() * t).sin())?;
    Ok(SingularTriple { sigma, u, v })
}

/// Damping factor `φ(n) = exp(-π² / (2 ln(8n - 4)))` of the exponential bound
/// on the singular values of the Hilbert Cholesky factor.
pub fn phi<S: Scalar>(n: u64, ctx: &PrecisionContext) -> Result<S> {
    if n == 0 {
        return Err(Error::InvalidArgument("phi needs n >= 1".into()));
    }
    let arg = S::from_f64(8.0 * n as f64 - 4.0, ctx);
    let pi2 = S::pi(ctx).square();
    Ok((-(pi2 / (S::from_i64(2, ctx) * arg.ln()))).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_values_of_j() {
        let ctx = PrecisionContext::hardware();
        let s1: f64 = j_singular_value(1, &ctx).unwrap();
        assert!((s1 - std::f64::consts::FRAC_2_PI).abs() < 1e-15);
        let s2: f64 = j_singular_value(2, &ctx).unwrap();
        assert!((s2 - 0.21221).abs() < 1e-5);
        for i in 1..20usize {
            let a: f64 = j_singular_value(i, &ctx).unwrap();
            let b: f64 = j_singular_value(i + 1, &ctx).unwrap();
            let ratio = (2 * i + 1) as f64 / (2 * i - 1) as f64;
            assert!((a / b - ratio).abs() < 1e-13);
        }
        assert!(j_singular_value::<f64>(0, &ctx).is_err());
    }

    #[test]
    fn triple_functions_are_unit_norm() {
        let ctx = PrecisionContext::hardware();
        let t = j_singular_triple::<f64>(3, 400, &ctx).unwrap();
        assert!((t.u.norm_squared(&ctx) - 1.0).abs() < 1e-12);
        assert!((t.v.norm_squared(&ctx) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn phi_values() {
        let ctx = PrecisionContext::hardware();
        let p100: f64 = phi(100, &ctx).unwrap();
        assert!((p100 - 0.4777).abs() < 1e-4);
        let p: f64 = phi(10_000, &ctx).unwrap();
        assert!((p.powi(9) - 0.0196).abs() < 1e-4);
        let p: f64 = phi(1_000_000_000, &ctx).unwrap();
        assert!((p.powi(50) / 1.9982e-5 - 1.0).abs() < 1e-3);
        for n in [1u64, 2, 10, 1000, 1 << 30] {
            let a: f64 = phi(n, &ctx).unwrap();
            let b: f64 = phi(4 * n, &ctx).unwrap();
            assert!(0.0 < a && a < b && b < 1.0);
        }
    }
}
