use rug::Integer;

use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Scalar};

/// Piecewise-constant function on the uniform partition of [0, 1] into `n` cells.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction<S> {
    values: Vec<S>,
}

impl<S: Scalar> GridFunction<S> {
    pub fn new(values: Vec<S>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("grid needs at least one cell".into()));
        }
        Ok(GridFunction { values })
    }

    pub fn constant(n: usize, value: S) -> Result<Self> {
        Self::new(vec![value; n])
    }

    /// Samples `f` at the cell midpoints `(k + 1/2) h`.
    pub fn sample_midpoints(n: usize, ctx: &PrecisionContext, mut f: impl FnMut(&S) -> S) -> Result<Self> {
        let values = (0..n).map(|k| f(&midpoint::<S>(k, n, ctx))).collect();
        Self::new(values)
    }

    pub fn cells(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }

    pub fn width(&self, ctx: &PrecisionContext) -> S {
        S::one(ctx) / S::from_i64(self.cells() as i64, ctx)
    }

    /// `h * Σ values²`
    pub fn norm_squared(&self, ctx: &PrecisionContext) -> S {
        let mut acc = S::zero(ctx);
        for v in &self.values {
            acc.mul_add_assign(v, v);
        }
        acc * self.width(ctx)
    }
}

/// Midpoint of cell `k` (0-based) on an `n`-cell grid.
pub fn midpoint<S: Scalar>(k: usize, n: usize, ctx: &PrecisionContext) -> S {
    S::from_i64(2 * k as i64 + 1, ctx) / S::from_i64(2 * n as i64, ctx)
}

/// `[B z]_j = ∫_0^1 t^{j-1} z(t) dt`, integrated exactly cell by cell.
///
/// Cell weights `((kh)^j - ((k-1)h)^j)/j` are exact rationals rounded once.
pub fn hausdorff_moment<S: Scalar>(z: &GridFunction<S>, j: usize, ctx: &PrecisionContext) -> Result<S> {
    if j == 0 {
        return Err(Error::InvalidArgument("moment index starts at 1".into()));
    }
    let n = z.cells();
    let denom = Integer::from(Integer::u_pow_u(n as u32, j as u32)) * Integer::from(j);
    let mut prev = Integer::new();
    let mut acc = S::zero(ctx);
    for (k, v) in z.values().iter().enumerate() {
        let cur = Integer::from(Integer::u_pow_u(k as u32 + 1, j as u32));
        let w = S::from_ratio(&Integer::from(&cur - &prev), &denom, ctx);
        acc.mul_add_assign(v, &w);
        prev = cur;
    }
    Ok(acc)
}

/// Continuous piecewise-linear antiderivative `s ↦ ∫_0^s x(t) dt`.
#[derive(Clone, Debug)]
pub struct PiecewiseLinear<S> {
    /// Values at the knots `k h`, `k = 0..=n`.
    knots: Vec<S>,
    slopes: Vec<S>,
}

impl<S: Scalar> PiecewiseLinear<S> {
    pub fn knot_values(&self) -> &[S] {
        &self.knots
    }

    pub fn eval(&self, s: &S, ctx: &PrecisionContext) -> Result<S> {
        let zero = S::zero(ctx);
        let one = S::one(ctx);
        if *s < zero || *s > one {
            return Err(Error::Domain {
                op: "cumulative_integral",
                detail: format!("s = {s}"),
            });
        }
        let n = self.slopes.len();
        let scaled = s.clone() * S::from_i64(n as i64, ctx);
        let mut k = scaled.to_f64().floor() as usize;
        if k >= n {
            k = n - 1;
        }
        let left = S::from_i64(k as i64, ctx) / S::from_i64(n as i64, ctx);
        Ok(self.knots[k].clone() + self.slopes[k].clone() * (s.clone() - left))
    }
}

pub fn cumulative_integral<S: Scalar>(x: &GridFunction<S>, ctx: &PrecisionContext) -> PiecewiseLinear<S> {
    let h = x.width(ctx);
    let mut knots = Vec::with_capacity(x.cells() + 1);
    let mut acc = S::zero(ctx);
    knots.push(acc.clone());
    for v in x.values() {
        acc.mul_add_assign(v, &h);
        knots.push(acc.clone());
    }
    PiecewiseLinear {
        knots,
        slopes: x.values().to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hw() -> PrecisionContext {
        PrecisionContext::hardware()
    }

    #[test]
    fn moments_of_constant_one() {
        let ctx = hw();
        let z = GridFunction::constant(7, 1.0).unwrap();
        for j in 1..12 {
            let m = hausdorff_moment(&z, j, &ctx).unwrap();
            assert!((m - 1.0 / j as f64).abs() < 1e-15, "j={j}");
        }
        assert!((hausdorff_moment(&z, 3, &ctx).unwrap() - 1.0 / 3.0).abs() < 1e-16);
        assert!(hausdorff_moment(&z, 0, &ctx).is_err());
    }

    #[test]
    fn moment_of_left_half_indicator() {
        let ctx = hw();
        let z = GridFunction::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(hausdorff_moment(&z, 2, &ctx).unwrap(), 0.125);
    }

    #[test]
    fn antiderivatives() {
        let ctx = hw();
        let one = cumulative_integral(&GridFunction::constant(4, 1.0).unwrap(), &ctx);
        for s in [0.0, 0.1, 0.5, 0.77, 1.0] {
            assert!((one.eval(&s, &ctx).unwrap() - s).abs() < 1e-15);
        }
        let zero = cumulative_integral(&GridFunction::constant(3, 0.0).unwrap(), &ctx);
        assert_eq!(zero.eval(&0.4, &ctx).unwrap(), 0.0);
        let ramp = cumulative_integral(&GridFunction::new(vec![2.0, 0.0]).unwrap(), &ctx);
        for s in [0.0, 0.2, 0.5, 0.6, 1.0] {
            let expected = f64::min(2.0 * s, 1.0);
            assert!((ramp.eval(&s, &ctx).unwrap() - expected).abs() < 1e-15);
        }
        assert!(ramp.eval(&1.5, &ctx).is_err());
    }

    #[test]
    fn endpoint_values() {
        let ctx = hw();
        let x = GridFunction::new(vec![0.3, -1.2, 4.0, 0.5, 2.0]).unwrap();
        let f = cumulative_integral(&x, &ctx);
        assert_eq!(f.eval(&0.0, &ctx).unwrap(), 0.0);
        let total: f64 = x.values().iter().sum::<f64>() / 5.0;
        assert!((f.eval(&1.0, &ctx).unwrap() - total).abs() < 1e-15);
    }

    #[test]
    fn squared_norm() {
        let ctx = hw();
        let x = GridFunction::new(vec![1.0, 2.0]).unwrap();
        assert_eq!(x.norm_squared(&ctx), 2.5);
    }
}
