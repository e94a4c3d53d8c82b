//! The kernel `k(s,t) = Σ_j (1-s^j)(1-t^j)/j²` of `A*A` and its `s`-derivative.

use super::dilog::dilog;
use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Scalar};

fn check_square<S: Scalar>(s: &S, t: &S, op: &'static str, ctx: &PrecisionContext) -> Result<()> {
    let zero = S::zero(ctx);
    let one = S::one(ctx);
    for v in [s, t] {
        if !v.is_finite() || *v < zero || *v > one {
            return Err(Error::Domain {
                op,
                detail: format!("({s}, {t}) outside the unit square"),
            });
        }
    }
    Ok(())
}

/// Closed form `π²/6 - Li_2(s) - Li_2(t) + Li_2(st)`, exactly zero on the
/// edges `s = 1` and `t = 1`.
pub fn kernel_k<S: Scalar>(s: &S, t: &S, ctx: &PrecisionContext) -> Result<S> {
    check_square(s, t, "kernel_k", ctx)?;
    let one = S::one(ctx);
    if *s == one || *t == one {
        return Ok(S::zero(ctx));
    }
    // Fixed argument order makes k(s,t) and k(t,s) bitwise identical.
    let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
    let zeta2 = S::pi(ctx).square() / S::from_i64(6, ctx);
    let product = lo.clone() * hi;
    let li_lo = dilog(lo, ctx)?;
    let li_hi = dilog(hi, ctx)?;
    Ok(zeta2 - (li_lo + li_hi) + dilog(&product, ctx)?)
}

/// Truncated series `Σ_{j<=terms} (1-s^j)(1-t^j)/j²`.
pub fn kernel_series<S: Scalar>(s: &S, t: &S, terms: usize, ctx: &PrecisionContext) -> Result<S> {
    check_square(s, t, "kernel_series", ctx)?;
    let one = S::one(ctx);
    let mut sp = s.clone();
    let mut tp = t.clone();
    let mut sum = S::zero(ctx);
    for j in 1..=terms as i64 {
        let term = (one.clone() - &sp) * (one.clone() - &tp) / S::from_i64(j * j, ctx);
        sum += term;
        sp *= s;
        tp *= t;
    }
    Ok(sum)
}

/// Partial sum `Σ_{j<=terms} -s^{j-1}(1-t^j)/j` of `∂k/∂s`, which diverges
/// to `-∞` as `s → 1` for `t < 1`.
pub fn kernel_ds_partial_sum<S: Scalar>(s: &S, t: &S, terms: usize, ctx: &PrecisionContext) -> Result<S> {
    check_square(s, t, "kernel_ds_partial_sum", ctx)?;
    let one = S::one(ctx);
    if *s == one {
        return Err(Error::Domain {
            op: "kernel_ds_partial_sum",
            detail: "s = 1: the derivative series diverges".into(),
        });
    }
    if terms == 0 {
        return Err(Error::InvalidArgument("at least one term".into()));
    }
    let mut sp = one.clone();
    let mut tp = t.clone();
    let mut sum = S::zero(ctx);
    for j in 1..=terms as i64 {
        let term = sp.clone() * (one.clone() - &tp) / S::from_i64(j, ctx);
        sum -= term;
        sp *= s;
        tp *= t;
        if sp.is_zero() {
            break;
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hw() -> PrecisionContext {
        PrecisionContext::hardware()
    }

    #[test]
    fn boundary_and_corner_values() {
        let ctx = hw();
        for t in [0.0, 0.3, 0.999, 1.0] {
            assert_eq!(kernel_k(&1.0, &t, &ctx).unwrap(), 0.0);
            assert_eq!(kernel_k(&t, &1.0, &ctx).unwrap(), 0.0);
        }
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((kernel_k(&0.0, &0.0, &ctx).unwrap() - z2).abs() < 1e-15);
        assert!((kernel_k(&0.5, &0.5, &ctx).unwrap() - 0.748106).abs() < 1e-6);
    }

    #[test]
    fn symmetric_bitwise() {
        let ctx = hw();
        for &(s, t) in &[(0.1, 0.7), (0.55, 0.2), (0.95, 0.05)] {
            assert_eq!(kernel_k(&s, &t, &ctx).unwrap(), kernel_k(&t, &s, &ctx).unwrap());
        }
    }

    #[test]
    fn domain() {
        let ctx = hw();
        assert!(kernel_k(&1.1, &0.0, &ctx).is_err());
        assert!(kernel_k(&0.0, &-0.1, &ctx).is_err());
        assert!(kernel_ds_partial_sum(&1.0, &0.0, 10, &ctx).is_err());
    }

    #[test]
    fn derivative_partial_sums() {
        let ctx = hw();
        for j in [1, 5, 100] {
            assert!((kernel_ds_partial_sum(&0.0, &0.5, j, &ctx).unwrap() + 0.5).abs() < 1e-15);
            assert_eq!(kernel_ds_partial_sum(&0.7, &1.0, j, &ctx).unwrap(), 0.0);
        }
        // -Σ s^{j-1}/j = ln(1-s)/s
        let v = kernel_ds_partial_sum(&0.9, &0.0, 10_000, &ctx).unwrap();
        let oracle = (0.1f64).ln() / 0.9;
        assert!((v - oracle).abs() < 1e-12, "{v} vs {oracle}");
    }
}
