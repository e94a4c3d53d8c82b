use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::{Integer, Rational as Q};

use crate::error::{Error, Result};

/// Exact fraction of arbitrary-size integers, always in lowest terms with a
/// positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(Q);

impl Rational {
    pub fn new(numer: impl Into<Integer>, denom: impl Into<Integer>) -> Result<Self> {
        let denom = denom.into();
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(Q::from((numer.into(), denom))))
    }

    pub fn from_integer(value: impl Into<Integer>) -> Self {
        Rational(Q::from(value.into()))
    }

    /// `1 / value` for a nonzero integer.
    pub fn recip_int(value: i64) -> Result<Self> {
        Self::new(1, value)
    }

    pub fn zero() -> Self {
        Rational(Q::new())
    }

    pub fn one() -> Self {
        Rational(Q::from(1))
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.cmp0() == Ordering::Equal
    }

    pub fn signum(&self) -> i32 {
        match self.0.cmp0() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.clone().abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(Q::from(&self.0 / &rhs.0)))
    }

    pub fn recip(&self) -> Result<Self> {
        Rational::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let numer = self.numer().clone().pow(exp);
        let denom = self.denom().clone().pow(exp);
        Rational(Q::from((numer, denom)))
    }

    pub fn square(&self) -> Self {
        Rational(Q::from(self.0.square_ref()))
    }

    pub fn as_inner(&self) -> &Q {
        &self.0
    }

    pub fn into_inner(self) -> Q {
        self.0
    }
}

impl From<Q> for Rational {
    fn from(q: Q) -> Self {
        Rational(q)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational(Q::from(v))
    }
}

impl From<Integer> for Rational {
    fn from(v: Integer) -> Self {
        Rational(Q::from(v))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($tr::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(Q::from($tr::$method(&self.0, &rhs.0)))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(Q::from(-&self.0))
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}
