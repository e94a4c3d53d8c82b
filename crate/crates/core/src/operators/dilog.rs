use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Scalar};

fn check_unit_interval<S: Scalar>(x: &S, op: &'static str, ctx: &PrecisionContext) -> Result<()> {
    if !x.is_finite() || *x < S::zero(ctx) || *x > S::one(ctx) {
        return Err(Error::Domain {
            op,
            detail: format!("x = {x} not in [0, 1]"),
        });
    }
    Ok(())
}

/// Direct series `Σ x^j / j^2` for `0 <= x < 1`, summed until the tail bound
/// `x^(J+1) / ((J+1)^2 (1-x))` drops below the working precision.
pub fn dilog_series<S: Scalar>(x: &S, ctx: &PrecisionContext) -> Result<S> {
    check_unit_interval(x, "dilog_series", ctx)?;
    let one = S::one(ctx);
    if *x == one {
        return Err(Error::Domain {
            op: "dilog_series",
            detail: "direct series needs x < 1".into(),
        });
    }
    let target = S::pow10(-(ctx.digits() as i32) - 2, ctx);
    let gap = one - x;
    let mut power = x.clone();
    let mut sum = S::zero(ctx);
    let mut j: i64 = 1;
    loop {
        let jj = S::from_i64(j * j, ctx);
        sum += power.clone() / &jj;
        power *= x;
        let next = S::from_i64((j + 1) * (j + 1), ctx);
        let tail = power.clone() / (next * &gap);
        if power.is_zero() || tail <= target.clone() * sum.abs() {
            break;
        }
        j += 1;
    }
    Ok(sum)
}

/// Dilogarithm `Li_2(x)` on [0, 1]. Arguments above 1/2 go through
/// `Li_2(x) = π²/6 - ln(x) ln(1-x) - Li_2(1-x)`.
pub fn dilog<S: Scalar>(x: &S, ctx: &PrecisionContext) -> Result<S> {
    check_unit_interval(x, "dilog", ctx)?;
    let one = S::one(ctx);
    if x.is_zero() {
        return Ok(S::zero(ctx));
    }
    let zeta2 = S::pi(ctx).square() / S::from_i64(6, ctx);
    if *x == one {
        return Ok(zeta2);
    }
    let half = S::from_f64(0.5, ctx);
    if *x <= half {
        dilog_series(x, ctx)
    } else {
        let complement = one - x;
        let reflected = dilog_series(&complement, ctx)?;
        Ok(zeta2 - x.ln() * complement.ln() - reflected)
    }
}
