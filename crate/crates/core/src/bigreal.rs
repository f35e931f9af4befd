//! Binary floating point with a big-integer significand.
//!
//! A value is `mant * 2^exp` with `|mant| < 2^bits`, rounded half away from
//! zero after every operation. Precision is chosen per value through
//! [`Precision`]; mixed-precision arithmetic keeps the larger one.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Mutex;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::real::Real;

/// Working precision, stated in decimal digits and carried in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    pub digits: u32,
    pub bits: u32,
}

impl Precision {
    /// Enough bits for `digits` decimal digits plus 16 guard bits.
    pub fn from_digits(digits: u32) -> Self {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16;
        Precision { digits, bits }
    }

    fn max(self, other: Precision) -> Precision {
        if other.bits > self.bits {
            other
        } else {
            self
        }
    }
}

#[derive(Clone)]
pub struct BigReal {
    mant: BigInt,
    exp: i64,
    prec: Precision,
}

fn round_shift(mant: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return mant.clone();
    }
    let negative = mant.is_negative();
    let mag = mant.magnitude();
    let mut q = BigInt::from(mag >> shift);
    if mag.bit(shift - 1) {
        q += 1;
    }
    if negative {
        -q
    } else {
        q
    }
}

impl BigReal {
    fn normalized(mant: BigInt, exp: i64, prec: Precision) -> Self {
        if mant.is_zero() {
            return BigReal { mant, exp: 0, prec };
        }
        let len = mant.bits();
        let (mut mant, mut exp) = if len > prec.bits as u64 {
            let shift = len - prec.bits as u64;
            (round_shift(&mant, shift), exp + shift as i64)
        } else {
            (mant, exp)
        };
        // Strip trailing zero bits so equal values share a representation.
        if let Some(tz) = mant.trailing_zeros() {
            if tz > 0 {
                mant >>= tz;
                exp += tz as i64;
            }
        }
        BigReal { mant, exp, prec }
    }

    pub fn with_precision(&self, prec: Precision) -> Self {
        Self::normalized(self.mant.clone(), self.exp, prec)
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Position one past the most significant bit, `floor(log2|x|) + 1`.
    fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    fn add_impl(&self, other: &BigReal) -> BigReal {
        let prec = self.prec.max(other.prec);
        if other.mant.is_zero() {
            return self.with_precision(prec);
        }
        if self.mant.is_zero() {
            return other.with_precision(prec);
        }
        let (big, small) = if self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        if big.top() - small.top() > prec.bits as i64 + 4 {
            // Below half an ulp even after rounding; only the sign of the
            // tiny operand can matter, and it cannot move a round-half tie.
            return big.with_precision(prec);
        }
        let e = big.exp.min(small.exp);
        let a = &big.mant << (big.exp - e) as u64;
        let b = &small.mant << (small.exp - e) as u64;
        Self::normalized(a + b, e, prec)
    }

    fn mul_impl(&self, other: &BigReal) -> BigReal {
        let prec = self.prec.max(other.prec);
        Self::normalized(&self.mant * &other.mant, self.exp + other.exp, prec)
    }

    fn div_impl(&self, other: &BigReal) -> BigReal {
        assert!(!other.mant.is_zero(), "BigReal division by zero");
        let prec = self.prec.max(other.prec);
        if self.mant.is_zero() {
            return BigReal::zero_with(prec);
        }
        let want = prec.bits as i64 + 3;
        let shift = (want + other.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let num = &self.mant << shift as u64;
        let (q, r) = num.div_rem(&other.mant);
        let (q, extra) = if r.is_zero() {
            (q, 0)
        } else {
            // Sticky bit keeps rounding honest for inexact quotients.
            let s = if q.is_negative() || (q.is_zero() && (self.mant.is_negative() ^ other.mant.is_negative())) {
                -1
            } else {
                1
            };
            ((q << 1u32) + s, 1)
        };
        Self::normalized(q, self.exp - shift - other.exp - extra, prec)
    }

    pub fn zero_with(prec: Precision) -> Self {
        BigReal { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_parts(mant: BigInt, exp: i64, prec: Precision) -> Self {
        Self::normalized(mant, exp, prec)
    }

    fn cmp_value(&self, other: &BigReal) -> Ordering {
        let sa = self.mant.sign();
        let sb = other.mant.sign();
        let rank = |s: Sign| match s {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        match rank(sa).cmp(&rank(sb)) {
            Ordering::Equal => {}
            o => return o,
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let mag = match self.top().cmp(&other.top()) {
            Ordering::Equal => {
                let e = self.exp.min(other.exp);
                let a = self.mant.magnitude() << (self.exp - e) as u64;
                let b = other.mant.magnitude() << (other.exp - e) as u64;
                a.cmp(&b)
            }
            o => o,
        };
        if sa == Sign::Minus {
            mag.reverse()
        } else {
            mag
        }
    }

    /// Exact decimal digits of `round(|x| * 10^k)` for the smallest shift
    /// that yields `digits` significant digits, with the decimal exponent.
    fn decimal_digits_of(&self, digits: usize) -> (String, i64) {
        let digits = digits.max(1);
        let approx = self.top() as f64 * std::f64::consts::LOG10_2;
        let mut e10 = approx.floor() as i64;
        loop {
            let k = digits as i64 - 1 - e10;
            let (num, den) = {
                let mut num = BigInt::from(self.mant.magnitude().clone());
                let mut den = BigInt::one();
                if k >= 0 {
                    num *= num_traits::pow(BigInt::from(10), k as usize);
                } else {
                    den *= num_traits::pow(BigInt::from(10), (-k) as usize);
                }
                if self.exp >= 0 {
                    num <<= self.exp as u64;
                } else {
                    den <<= (-self.exp) as u64;
                }
                (num, den)
            };
            let (q, r) = num.div_rem(&den);
            let q = if (r << 1u32) >= den { q + 1 } else { q };
            let s = q.to_string();
            if s.len() > digits {
                e10 += 1;
                continue;
            }
            if s.len() < digits {
                e10 -= 1;
                continue;
            }
            return (s, e10);
        }
    }
}

impl Real for BigReal {
    type Ctx = Precision;

    fn ctx(&self) -> Precision {
        self.prec
    }

    fn from_i64(ctx: &Precision, v: i64) -> Self {
        Self::normalized(BigInt::from(v), 0, *ctx)
    }

    fn from_f64(ctx: &Precision, v: f64) -> Self {
        assert!(v.is_finite(), "non-finite value {v}");
        let (n, d) = v.to_exact_ratio();
        let exp = -(d.bits() as i64 - 1);
        Self::normalized(n, exp, *ctx)
    }

    fn from_bigint(ctx: &Precision, v: &BigInt) -> Self {
        Self::normalized(v.clone(), 0, *ctx)
    }

    fn from_big_ratio(ctx: &Precision, num: &BigInt, den: &BigInt) -> Self {
        let a = Self::normalized(num.clone(), 0, Precision { digits: 0, bits: u32::MAX });
        let b = Self::normalized(den.clone(), 0, Precision { digits: 0, bits: u32::MAX });
        let mut q = a.div_impl_with(&b, *ctx);
        q.prec = *ctx;
        q
    }

    fn pi(ctx: &Precision) -> Self {
        pi_with(*ctx)
    }

    fn sqrt(&self) -> Self {
        assert!(!self.mant.is_negative(), "square root of a negative value");
        if self.mant.is_zero() {
            return self.clone();
        }
        let want = 2 * (self.prec.bits as i64 + 3);
        let mut shift = (want - self.mant.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.mant << shift as u64;
        let root = m.sqrt();
        let exact = &root * &root == m;
        let (root, extra) = if exact { (root, 0) } else { ((root << 1u32) + 1, 1) };
        Self::normalized(root, (self.exp - shift) / 2 - extra, self.prec)
    }

    fn abs(&self) -> Self {
        BigReal { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    fn floor(&self) -> Self {
        if self.exp >= 0 || self.mant.is_zero() {
            return self.clone();
        }
        let den = BigInt::one() << (-self.exp) as u64;
        Self::normalized(self.mant.div_floor(&den), 0, self.prec)
    }

    fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let len = self.mant.bits() as i64;
        let shift = (len - 62).max(0);
        let top = round_shift(&self.mant, shift as u64).to_f64().unwrap_or(0.0);
        let mut e = self.exp + shift;
        let mut v = top;
        while e > 0 {
            let step = e.min(1000);
            v *= 2f64.powi(step as i32);
            e -= step;
        }
        while e < 0 {
            let step = (-e).min(1000);
            v /= 2f64.powi(step as i32);
            e += step;
        }
        v
    }

    fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn to_exact_ratio(&self) -> (BigInt, BigInt) {
        if self.exp >= 0 {
            (&self.mant << self.exp as u64, BigInt::one())
        } else {
            (self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    fn precision_bits(ctx: &Precision) -> u32 {
        ctx.bits
    }

    fn decimal_digits(ctx: &Precision) -> u32 {
        ctx.digits
    }

    fn to_sci_string(&self, digits: usize) -> String {
        if self.mant.is_zero() {
            let frac = "0".repeat(digits.max(1) - 1);
            return if frac.is_empty() { "0e0".into() } else { format!("0.{frac}e0") };
        }
        let (s, e10) = self.decimal_digits_of(digits);
        let sign = if self.mant.is_negative() { "-" } else { "" };
        let (head, tail) = s.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }

    fn parse_decimal(ctx: &Precision, s: &str) -> Option<Self> {
        let (num, den) = parse_decimal_ratio(s)?;
        Some(Self::from_big_ratio(ctx, &num, &den))
    }
}

impl BigReal {
    fn div_impl_with(&self, other: &BigReal, prec: Precision) -> BigReal {
        let a = BigReal { mant: self.mant.clone(), exp: self.exp, prec };
        let b = BigReal { mant: other.mant.clone(), exp: other.exp, prec };
        a.div_impl(&b)
    }
}

/// Exact rational value of a decimal literal such as `-1.25e-3`.
pub(crate) fn parse_decimal_ratio(s: &str) -> Option<(BigInt, BigInt)> {
    let s = s.trim();
    let (negative, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().ok()?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 100_000 {
        return None;
    }
    let ten = BigInt::from(10);
    if scale >= 0 {
        Some((num * num_traits::pow(ten, scale as usize), BigInt::one()))
    } else {
        Some((num, num_traits::pow(ten, (-scale) as usize)))
    }
}

/// Fixed-point `atan(1/x) * 2^bits`.
fn atan_inv(x: u32, bits: u64) -> BigInt {
    let one = BigInt::one() << bits;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut term = one / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &x2;
        k += 1;
    }
    sum
}

static PI_CACHE: Mutex<Option<(u64, BigInt)>> = Mutex::new(None);

fn pi_with(prec: Precision) -> BigReal {
    let want = prec.bits as u64 + 32;
    let mut cache = PI_CACHE.lock().unwrap_or_else(|e| e.into_inner());
    let (bits, fixed) = match cache.as_ref() {
        Some((b, v)) if *b >= want => (*b, v.clone()),
        _ => {
            let guard = want + 32;
            let v: BigInt = (atan_inv(5, guard) * 16 - atan_inv(239, guard) * 4) >> 32u32;
            *cache = Some((want, v.clone()));
            (want, v)
        }
    };
    drop(cache);
    BigReal::normalized(fixed, -(bits as i64), prec)
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({})", self.to_sci_string(self.prec.digits.max(1) as usize))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(self.prec.digits.max(1) as usize);
        f.write_str(&self.to_sci_string(digits))
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal { mant: -self.mant, exp: self.exp, prec: self.prec }
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$imp(&rhs)
            }
        }
        impl<'a> $tr<&'a BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &'a BigReal) -> BigReal {
                self.$imp(rhs)
            }
        }
        impl<'a> $tr<BigReal> for &'a BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$imp(&rhs)
            }
        }
        impl<'a, 'b> $tr<&'b BigReal> for &'a BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &'b BigReal) -> BigReal {
                self.$imp(rhs)
            }
        }
    };
}

impl BigReal {
    fn sub_impl(&self, other: &BigReal) -> BigReal {
        self.add_impl(&-other)
    }
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);
