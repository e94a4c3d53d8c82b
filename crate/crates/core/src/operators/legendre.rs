//! Normalized shifted Legendre polynomials on [0, 1].
//!
//! `L_j(t) = sqrt(2j-1)/(j-1)! * d^{j-1}/dt^{j-1} [t^{j-1} (1-t)^{j-1}]`, so
//! `L_1 = 1`, `L_2 = sqrt(3)(1 - 2t)`, `L_3 = sqrt(5)(1 - 6t + 6t^2)`.
//! The integer part is kept exactly; the `sqrt(2j-1)` factor is symbolic.

use rug::Integer;

use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Rational, Scalar, Surd};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendrePolynomial {
    index: usize,
    /// Monomial coefficients `c[0..=j-1]` of the integer part.
    coefficients: Vec<Integer>,
}

impl LegendrePolynomial {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn degree(&self) -> usize {
        self.index - 1
    }

    pub fn coefficients(&self) -> &[Integer] {
        &self.coefficients
    }

    /// The normalization is `sqrt(normalization_radicand())`.
    pub fn normalization_radicand(&self) -> u64 {
        2 * self.index as u64 - 1
    }

    /// `∫_0^1 (integer part)(t) * t^power dt` as an exact rational.
    fn integer_part_moment(&self, power: usize) -> Rational {
        // Common denominator lcm-free: accumulate over the product of (k+power+1).
        let mut numer = Integer::new();
        let mut denom = Integer::from(1);
        for (k, c) in self.coefficients.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let d = Integer::from(k + power + 1);
            // numer/denom + c/d
            numer *= &d;
            numer += Integer::from(c * &denom);
            denom *= d;
        }
        Rational::new(numer, denom).expect("positive denominator")
    }

    /// Exact inner product `<L_j, t^power>`.
    pub fn dot_monomial(&self, power: usize) -> Surd {
        Surd::new(
            self.integer_part_moment(power),
            Rational::from(self.normalization_radicand() as i64),
        )
    }

    /// Exact `∫_0^1 L_i(t) L_j(t) dt`.
    pub fn inner(&self, other: &LegendrePolynomial) -> Surd {
        let mut acc = Rational::zero();
        for (k, c) in self.coefficients.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let partial = other.integer_part_moment(k);
            acc = acc + partial * Rational::from(c.clone());
        }
        Surd::new(
            acc,
            Rational::from((self.normalization_radicand() * other.normalization_radicand()) as i64),
        )
    }

    /// Horner evaluation at working precision.
    pub fn eval<S: Scalar>(&self, t: &S, ctx: &PrecisionContext) -> S {
        let mut acc = S::zero(ctx);
        for c in self.coefficients.iter().rev() {
            acc *= t;
            acc += S::from_rational(&Rational::from(c.clone()), ctx);
        }
        acc * S::from_i64(self.normalization_radicand() as i64, ctx).sqrt()
    }
}

/// Builds `L_j` by expanding `(t - t^2)^{j-1}` with an integer recurrence,
/// differentiating `j-1` times and dividing by `(j-1)!`.
pub fn legendre(j: usize) -> Result<LegendrePolynomial> {
    if j == 0 {
        return Err(Error::InvalidArgument("Legendre index starts at 1".into()));
    }
    let m = j - 1;
    // product[k] = coefficient of t^k in (t - t^2)^m
    let mut product = vec![Integer::from(1)];
    for _ in 0..m {
        let mut next = vec![Integer::new(); product.len() + 2];
        for (k, c) in product.iter().enumerate() {
            next[k + 1] += c;
            next[k + 2] -= c;
        }
        product = next;
    }
    // m-th derivative: t^k -> k!/(k-m)! t^{k-m}
    let mut coefficients = Vec::with_capacity(m + 1);
    let m_fact = Integer::from(Integer::factorial(m as u32));
    for (k, c) in product.iter().enumerate().skip(m) {
        let falling = Integer::from(Integer::factorial(k as u32))
            / Integer::from(Integer::factorial((k - m) as u32));
        let value = Integer::from(c * &falling);
        let (q, r) = value.div_rem(m_fact.clone());
        debug_assert!(r == 0);
        coefficients.push(q);
    }
    Ok(LegendrePolynomial {
        index: j,
        coefficients,
    })
}

/// Exact `<L_i, t^j>`.
pub fn legendre_dot_monomial(i: usize, j: usize) -> Result<Surd> {
    Ok(legendre(i)?.dot_monomial(j))
}
