use std::fmt;

use super::precision::PrecisionContext;
use super::rational::Rational;
use super::scalar::Scalar;

/// Exact value `coeff * sqrt(radicand)` with rational parts.
///
/// Normalizations such as `sqrt(2j-1)` or `h^(-1/2)` stay symbolic until
/// [`Surd::to_scalar`], which rounds `coeff^2 * radicand` once and takes a
/// single square root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    coeff: Rational,
    radicand: Rational,
}

impl Surd {
    /// Panics if `radicand` is negative.
    pub fn new(coeff: Rational, radicand: Rational) -> Self {
        assert!(radicand.signum() >= 0, "surd radicand must be non-negative");
        Surd { coeff, radicand }
    }

    pub fn rational(value: Rational) -> Self {
        Surd {
            coeff: value,
            radicand: Rational::one(),
        }
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero() || self.radicand.is_zero()
    }

    pub fn signum(&self) -> i32 {
        if self.radicand.is_zero() {
            0
        } else {
            self.coeff.signum()
        }
    }

    /// The exact square `coeff^2 * radicand`.
    pub fn square(&self) -> Rational {
        self.coeff.square() * &self.radicand
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        Surd {
            coeff: &self.coeff * &other.coeff,
            radicand: &self.radicand * &other.radicand,
        }
    }

    pub fn scale(&self, factor: &Rational) -> Surd {
        Surd {
            coeff: &self.coeff * factor,
            radicand: self.radicand.clone(),
        }
    }

    pub fn neg(&self) -> Surd {
        Surd {
            coeff: -&self.coeff,
            radicand: self.radicand.clone(),
        }
    }

    pub fn to_scalar<S: Scalar>(&self, ctx: &PrecisionContext) -> S {
        if self.radicand == Rational::one() {
            return S::from_rational(&self.coeff, ctx);
        }
        let magnitude = S::from_rational(&self.square(), ctx).sqrt();
        if self.coeff.signum() < 0 {
            -magnitude
        } else {
            magnitude
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == Rational::one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_rounding_of_sqrt_three_over_six() {
        let ctx = PrecisionContext::new(15).unwrap();
        let s = Surd::new(Rational::new(-1, 6).unwrap(), Rational::from(3));
        let v: f64 = s.to_scalar(&ctx);
        assert!((v + 3f64.sqrt() / 6.0).abs() < 1e-16);
        assert_eq!(s.square(), Rational::new(1, 12).unwrap());
    }

    #[test]
    fn products_multiply_radicands() {
        let a = Surd::new(Rational::from(2), Rational::from(3));
        let b = Surd::new(Rational::new(1, 2).unwrap(), Rational::from(3));
        assert_eq!(a.mul(&b).square(), Rational::from(9));
    }
}
