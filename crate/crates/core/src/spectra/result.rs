use crate::numerics::{PrecisionContext, Scalar};

/// Descending spectrum with per-value trust flags.
///
/// A value is trusted when it is at least `trust_floor`, which defaults to
/// `values[0] * 10^(-digits + 5)` and may be raised by a caller that knows of
/// additional error sources.
#[derive(Clone, Debug)]
pub struct SpectralResult<S> {
    pub values: Vec<S>,
    pub trusted: Vec<bool>,
    pub trust_floor: S,
    pub precision_digits: u32,
    pub iterations: usize,
    /// Relative off-diagonal mass left at termination.
    pub residual: f64,
    pub converged: bool,
}

impl<S: Scalar> SpectralResult<S> {
    /// Sorts `values` descending (stable, so ties keep their original order).
    pub fn new(mut values: Vec<S>, iterations: usize, residual: f64, converged: bool, ctx: &PrecisionContext) -> Self {
        values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        let trust_floor = default_floor(values.first(), ctx);
        let trusted = values.iter().map(|v| *v >= trust_floor).collect();
        SpectralResult {
            values,
            trusted,
            trust_floor,
            precision_digits: ctx.digits(),
            iterations,
            residual,
            converged,
        }
    }

    /// Raises the floor to `max(trust_floor, floor)` and re-flags.
    pub fn with_floor(mut self, floor: S) -> Self {
        if floor > self.trust_floor {
            self.trust_floor = floor;
        }
        self.trusted = self.values.iter().map(|v| *v >= self.trust_floor).collect();
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Length of the leading run of trusted values.
    pub fn trusted_count(&self) -> usize {
        self.trusted.iter().take_while(|t| **t).count()
    }

    pub fn trusted_values(&self) -> &[S] {
        &self.values[..self.trusted_count()]
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(Scalar::to_f64).collect()
    }
}

fn default_floor<S: Scalar>(top: Option<&S>, ctx: &PrecisionContext) -> S {
    match top {
        Some(v) => v.abs() * S::pow10(ctx.trust_exponent(), ctx),
        None => S::zero(ctx),
    }
}

/// Default relative tolerance `10^(-digits + 10)`.
pub fn default_tolerance<S: Scalar>(ctx: &PrecisionContext) -> S {
    S::pow10(ctx.default_tol_exponent(), ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_follow_floor() {
        let ctx = PrecisionContext::hardware();
        let r = SpectralResult::new(vec![1e-12, 1.0, 1e-9], 3, 0.0, true, &ctx);
        assert_eq!(r.values, vec![1.0, 1e-9, 1e-12]);
        assert!((r.trust_floor - 1e-10).abs() < 1e-25);
        assert_eq!(r.trusted, vec![true, true, false]);
        assert_eq!(r.trusted_count(), 2);
        let raised = r.with_floor(2.0);
        assert_eq!(raised.trusted_count(), 0);
    }

    #[test]
    fn empty_spectrum() {
        let ctx = PrecisionContext::hardware();
        let r = SpectralResult::<f64>::new(vec![], 0, 0.0, true, &ctx);
        assert!(r.is_empty());
        assert_eq!(r.trust_floor, 0.0);
    }
}
