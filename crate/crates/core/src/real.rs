//! Scalar abstraction shared by double-precision and extended-precision code.
//!
//! Moment targets, catalog recipes, residuals and the Newton refiner are all
//! written once against [`Real`]; `f64` and [`BigReal`](crate::BigReal)
//! implement it. Constants are created through a context value so that an
//! extended-precision build knows how many bits to carry.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

pub trait Real:
    Clone
    + Debug
    + Display
    + PartialEq
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
{
    /// Construction context (unit for `f64`, a precision for big floats).
    type Ctx: Clone + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    fn from_f64(ctx: &Self::Ctx, v: f64) -> Self;
    fn from_bigint(ctx: &Self::Ctx, v: &BigInt) -> Self;
    /// Correctly rounded (or nearly so) value of `num / den`.
    fn from_big_ratio(ctx: &Self::Ctx, num: &BigInt, den: &BigInt) -> Self;
    fn pi(ctx: &Self::Ctx) -> Self;

    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    fn floor(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_finite(&self) -> bool;

    /// Exact value as a ratio of integers (finite values only).
    fn to_exact_ratio(&self) -> (BigInt, BigInt);

    /// Significand bits carried by values built from `ctx`.
    fn precision_bits(ctx: &Self::Ctx) -> u32;
    /// Decimal digits the context is meant to deliver.
    fn decimal_digits(ctx: &Self::Ctx) -> u32;

    /// Scientific notation with `digits` significant digits.
    fn to_sci_string(&self, digits: usize) -> String;
    fn parse_decimal(ctx: &Self::Ctx, s: &str) -> Option<Self>;

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_i64(ctx, 0)
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_i64(ctx, 1)
    }

    fn ratio(ctx: &Self::Ctx, p: i64, q: i64) -> Self {
        Self::from_big_ratio(ctx, &BigInt::from(p), &BigInt::from(q))
    }

    fn from_rational(ctx: &Self::Ctx, q: &BigRational) -> Self {
        Self::from_big_ratio(ctx, q.numer(), q.denom())
    }

    /// `10^-k` in this context.
    fn pow10_neg(ctx: &Self::Ctx, k: u32) -> Self {
        Self::from_big_ratio(ctx, &BigInt::one(), &num_traits::pow(BigInt::from(10), k as usize))
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    fn powu(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ctx());
        for _ in 0..k {
            acc = acc * self;
        }
        acc
    }

    /// Exact zero replaces a negative zero.
    fn canonical_zero(self) -> Self {
        if self.is_zero() {
            Self::zero(&self.ctx())
        } else {
            self
        }
    }
}

impl Real for f64 {
    type Ctx = ();

    fn ctx(&self) {}

    fn from_i64(_: &(), v: i64) -> Self {
        v as f64
    }

    fn from_f64(_: &(), v: f64) -> Self {
        v
    }

    fn from_bigint(_: &(), v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }

    fn from_big_ratio(_: &(), num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone()).to_f64().unwrap_or(f64::NAN)
    }

    fn pi(_: &()) -> Self {
        std::f64::consts::PI
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn floor(&self) -> Self {
        f64::floor(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn to_exact_ratio(&self) -> (BigInt, BigInt) {
        let bits = self.to_bits();
        let negative = (bits >> 63) != 0;
        let exp_field = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & 0x000f_ffff_ffff_ffff;
        let (mant, exp) = if exp_field == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), exp_field - 1075)
        };
        let mut num = BigInt::from(mant);
        if negative {
            num = -num;
        }
        if exp >= 0 {
            (num << exp as usize, BigInt::one())
        } else {
            (num, BigInt::one() << (-exp) as usize)
        }
    }

    fn precision_bits(_: &()) -> u32 {
        53
    }

    fn decimal_digits(_: &()) -> u32 {
        16
    }

    fn to_sci_string(&self, digits: usize) -> String {
        format!("{:.*e}", digits.saturating_sub(1), self)
    }

    fn parse_decimal(_: &(), s: &str) -> Option<Self> {
        s.trim().parse::<f64>().ok().filter(|v| v.is_finite())
    }
}
