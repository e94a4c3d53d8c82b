//! Precision-generic real scalars: IEEE doubles and MPFR big floats.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::{Float, Integer};

use super::precision::PrecisionContext;
use super::rational::Rational;

/// Software big float. The precision travels with each value.
pub type BigFloat = Float;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    fn from_f64(x: f64, ctx: &PrecisionContext) -> Self;
    fn from_i64(x: i64, ctx: &PrecisionContext) -> Self;
    /// Round-to-nearest value of an exact rational.
    fn from_rational(r: &Rational, ctx: &PrecisionContext) -> Self;
    /// Round-to-nearest value of `numer / denom` without normalizing the fraction.
    fn from_ratio(numer: &Integer, denom: &Integer, ctx: &PrecisionContext) -> Self;
    fn pi(ctx: &PrecisionContext) -> Self;

    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    /// `exp(x) - 1` without cancellation near zero.
    fn exp_m1(&self) -> Self;
    /// `ln(1 + x)` without cancellation near zero.
    fn ln_1p(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn powi(&self, exp: i32) -> Self;
    fn is_finite(&self) -> bool;
    fn is_zero(&self) -> bool;
    fn is_sign_negative(&self) -> bool;

    /// Unit roundoff of the arithmetic actually used.
    fn unit_roundoff(ctx: &PrecisionContext) -> Self;

    fn zero(ctx: &PrecisionContext) -> Self {
        Self::from_i64(0, ctx)
    }

    fn one(ctx: &PrecisionContext) -> Self {
        Self::from_i64(1, ctx)
    }

    /// Exactly rounded `10^exp`.
    fn pow10(exp: i32, ctx: &PrecisionContext) -> Self {
        let p = Integer::from(Integer::u_pow_u(10, exp.unsigned_abs()));
        let r = if exp >= 0 {
            Rational::from(p)
        } else {
            Rational::from_integer(1)
                .checked_div(&Rational::from(p))
                .expect("power of ten is nonzero")
        };
        Self::from_rational(&r, ctx)
    }

    fn square(&self) -> Self {
        self.clone() * self
    }

    /// `self += a * b`
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        let mut t = a.clone();
        t *= b;
        *self += &t;
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn signum_f64(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else if self.is_sign_negative() {
            -1.0
        } else {
            1.0
        }
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64, _ctx: &PrecisionContext) -> Self {
        x
    }

    fn from_i64(x: i64, _ctx: &PrecisionContext) -> Self {
        x as f64
    }

    fn from_rational(r: &Rational, _ctx: &PrecisionContext) -> Self {
        Float::with_val_round(53, r.as_inner(), Round::Nearest).0.to_f64()
    }

    fn from_ratio(numer: &Integer, denom: &Integer, _ctx: &PrecisionContext) -> Self {
        let n = Float::with_val(96, numer);
        (n / Float::with_val(96, denom)).to_f64()
    }

    fn pi(_ctx: &PrecisionContext) -> Self {
        std::f64::consts::PI
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn ln(&self) -> Self {
        f64::ln(*self)
    }

    fn exp(&self) -> Self {
        f64::exp(*self)
    }

    fn exp_m1(&self) -> Self {
        f64::exp_m1(*self)
    }

    fn ln_1p(&self) -> Self {
        f64::ln_1p(*self)
    }

    fn sin(&self) -> Self {
        f64::sin(*self)
    }

    fn cos(&self) -> Self {
        f64::cos(*self)
    }

    fn powi(&self, exp: i32) -> Self {
        f64::powi(*self, exp)
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn is_sign_negative(&self) -> bool {
        *self < 0.0
    }

    fn unit_roundoff(_ctx: &PrecisionContext) -> Self {
        f64::EPSILON / 2.0
    }

    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

impl Scalar for Float {
    fn from_f64(x: f64, ctx: &PrecisionContext) -> Self {
        Float::with_val(ctx.bits(), x)
    }

    fn from_i64(x: i64, ctx: &PrecisionContext) -> Self {
        Float::with_val(ctx.bits(), x)
    }

    fn from_rational(r: &Rational, ctx: &PrecisionContext) -> Self {
        Float::with_val_round(ctx.bits(), r.as_inner(), Round::Nearest).0
    }

    fn from_ratio(numer: &Integer, denom: &Integer, ctx: &PrecisionContext) -> Self {
        let guard = ctx.bits() + 8;
        let q = Float::with_val(guard, numer) / Float::with_val(guard, denom);
        Float::with_val(ctx.bits(), &q)
    }

    fn pi(ctx: &PrecisionContext) -> Self {
        Float::with_val(ctx.bits(), Constant::Pi)
    }

    fn to_f64(&self) -> f64 {
        Float::to_f64(self)
    }

    fn sqrt(&self) -> Self {
        self.clone().sqrt()
    }

    fn abs(&self) -> Self {
        self.clone().abs()
    }

    fn ln(&self) -> Self {
        self.clone().ln()
    }

    fn exp(&self) -> Self {
        self.clone().exp()
    }

    fn exp_m1(&self) -> Self {
        self.clone().exp_m1()
    }

    fn ln_1p(&self) -> Self {
        self.clone().ln_1p()
    }

    fn sin(&self) -> Self {
        self.clone().sin()
    }

    fn cos(&self) -> Self {
        self.clone().cos()
    }

    fn powi(&self, exp: i32) -> Self {
        self.clone().pow(exp)
    }

    fn is_finite(&self) -> bool {
        Float::is_finite(self)
    }

    fn is_zero(&self) -> bool {
        Float::is_zero(self)
    }

    fn is_sign_negative(&self) -> bool {
        Float::is_sign_negative(self) && !Float::is_zero(self)
    }

    fn unit_roundoff(ctx: &PrecisionContext) -> Self {
        let one = Float::with_val(ctx.bits(), 1);
        one >> ctx.bits()
    }

    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Round-to-nearest scalar value of an exact rational at `ctx`.
pub fn to_scalar<S: Scalar>(r: &Rational, ctx: &PrecisionContext) -> S {
    S::from_rational(r, ctx)
}

/// Scientific notation with at most `digits` significant digits.
pub fn format_sci<S: Scalar>(x: &S, digits: u32) -> String {
    let f = x.to_f64();
    let d = digits.clamp(1, 17) as usize;
    format!("{:.*e}", d - 1, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_third_in_hardware() {
        let ctx = PrecisionContext::new(15).unwrap();
        let x: f64 = to_scalar(&Rational::new(1, 3).unwrap(), &ctx);
        assert_eq!(format!("{x:.15}"), "0.333333333333333");
        let one: f64 = to_scalar(&Rational::one(), &ctx);
        assert_eq!(one, 1.0);
    }

    #[test]
    fn exact_integers_in_software() {
        let ctx = PrecisionContext::new(40).unwrap();
        let one: Float = to_scalar(&Rational::one(), &ctx);
        assert_eq!(one, 1);
        assert_eq!(one.prec(), ctx.bits());
    }

    #[test]
    fn pow10_is_exactly_rounded() {
        let ctx = PrecisionContext::new(30).unwrap();
        let tiny = Float::pow10(-25, &ctx);
        let check = Float::with_val(ctx.bits(), Float::parse("1e-25").unwrap());
        assert_eq!(tiny, check);
    }

    #[test]
    fn unit_roundoff_matches_precision() {
        let ctx = PrecisionContext::new(100).unwrap();
        let u = Float::unit_roundoff(&ctx);
        assert!(u.to_f64() < 1e-104 && u.to_f64() > 1e-107);
    }
}
