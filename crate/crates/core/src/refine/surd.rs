//! Continued fractions and recognition of rationals and quadratic surds
//! from high-precision values.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lll::integer_relations;
use crate::bigreal::BigReal;
use crate::real::Real;

/// Simple continued fraction `[a₀; a₁, a₂, …]` of `x`.
///
/// Terms are produced by Euclid's algorithm on the exact binary value of
/// `x` and stop after `max_terms`, when the expansion terminates, or once
/// the current convergent agrees with `x` to the precision `x` carries.
pub fn continued_fraction<T: Real>(x: &T, max_terms: usize) -> Vec<BigInt> {
    let (num, den) = x.to_exact_ratio();
    let exact = BigRational::new(num, den);
    let digits = T::decimal_digits(&x.ctx());
    let eps = exact.abs() / BigRational::from_integer(num_traits::pow(BigInt::from(10), digits as usize));
    cf_of_rational(&exact, &eps, max_terms)
}

fn cf_of_rational(x: &BigRational, eps: &BigRational, max_terms: usize) -> Vec<BigInt> {
    let mut terms = Vec::new();
    let (mut p0, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q0, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    while terms.len() < max_terms.max(1) {
        let a = rest.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        terms.push(a.clone());
        let frac = rest - BigRational::from_integer(a);
        let err = (x - BigRational::new(p2.clone(), q2.clone())).abs();
        if frac.is_zero() || (!eps.is_zero() && err <= *eps) {
            break;
        }
        rest = frac.recip();
        (p0, p1, q0, q1) = (p1, p2, q1, q2);
    }
    terms
}

/// Convergents `pₖ/qₖ` of a continued fraction.
pub fn convergents(terms: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let (mut p0, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q0, mut q1) = (BigInt::one(), BigInt::zero());
    terms
        .iter()
        .map(|a| {
            let p2 = a * &p1 + &p0;
            let q2 = a * &q1 + &q0;
            (p0, p1, q0, q1) = (p1.clone(), p2.clone(), q1.clone(), q2.clone());
            (p2, q2)
        })
        .collect()
}

/// Closed forms recognised by [`identify_surd`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurdForm {
    /// `p/q`
    Rational { p: BigInt, q: BigInt },
    /// `sign · √(p/q)`
    SqrtRational { negative: bool, p: BigInt, q: BigInt },
    /// `(a + b√c)/d` with squarefree `c > 1`
    Quadratic { a: BigInt, b: BigInt, c: BigInt, d: BigInt },
    /// `sign · √((a + b√c)/d)`
    SqrtQuadratic { negative: bool, a: BigInt, b: BigInt, c: BigInt, d: BigInt },
}

fn ratio_str(p: &BigInt, q: &BigInt) -> String {
    if q.is_one() {
        p.to_string()
    } else {
        format!("{p}/{q}")
    }
}

fn quadratic_str(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> String {
    let op = if b.is_negative() { '-' } else { '+' };
    let body = format!("{a} {op} {}·√{c}", b.abs());
    if d.is_one() {
        format!("({body})")
    } else {
        format!("({body})/{d}")
    }
}

impl fmt::Display for SurdForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurdForm::Rational { p, q } => f.write_str(&ratio_str(p, q)),
            SurdForm::SqrtRational { negative, p, q } => {
                write!(f, "{}√({})", if *negative { "-" } else { "" }, ratio_str(p, q))
            }
            SurdForm::Quadratic { a, b, c, d } => f.write_str(&quadratic_str(a, b, c, d)),
            SurdForm::SqrtQuadratic { negative, a, b, c, d } => {
                let sign = if *negative { "-" } else { "" };
                let inner = quadratic_str(a, b, c, d);
                // A bare `(a + b√c)` already carries its parentheses.
                if d.is_one() {
                    write!(f, "{sign}√{inner}")
                } else {
                    write!(f, "{sign}√({inner})")
                }
            }
        }
    }
}

impl SurdForm {
    /// The form in the catalog's arithmetic syntax, e.g. `(1+1*sqrt(7))/2`.
    pub fn to_expr(&self) -> String {
        let quad = |a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt| format!("(({a})+({b})*sqrt({c}))/({d})");
        match self {
            SurdForm::Rational { p, q } => format!("({p})/({q})"),
            SurdForm::SqrtRational { negative, p, q } => {
                format!("{}sqrt(({p})/({q}))", if *negative { "-" } else { "" })
            }
            SurdForm::Quadratic { a, b, c, d } => quad(a, b, c, d),
            SurdForm::SqrtQuadratic { negative, a, b, c, d } => {
                format!("{}sqrt({})", if *negative { "-" } else { "" }, quad(a, b, c, d))
            }
        }
    }

    /// Value of the form at precision `ctx`.
    pub fn evaluate<T: Real>(&self, ctx: &T::Ctx) -> T {
        let quad = |a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt| {
            (T::from_bigint(ctx, a) + T::from_bigint(ctx, b) * T::from_bigint(ctx, c).sqrt()) / T::from_bigint(ctx, d)
        };
        let signed = |neg: bool, v: T| if neg { -v } else { v };
        match self {
            SurdForm::Rational { p, q } => T::from_big_ratio(ctx, p, q),
            SurdForm::SqrtRational { negative, p, q } => signed(*negative, T::from_big_ratio(ctx, p, q).sqrt()),
            SurdForm::Quadratic { a, b, c, d } => quad(a, b, c, d),
            SurdForm::SqrtQuadratic { negative, a, b, c, d } => signed(*negative, quad(a, b, c, d).sqrt()),
        }
    }
}

/// A recognised closed form for a value.
#[derive(Clone, Debug)]
pub struct SurdCandidate {
    pub form: SurdForm,
    /// The form evaluated at the input's precision.
    pub value: BigReal,
    /// Continued fraction of the input that was examined.
    pub cf_terms: Vec<BigInt>,
    /// Decimal digits on which `value` and the input agree.
    pub confidence: u32,
}

/// Integer size limits for [`identify_surd`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurdBounds {
    /// Largest numerator, denominator or radicand for rationals, square
    /// roots of rationals and surds read from a periodic expansion.
    pub max_int: u64,
    /// Largest integer in surds found by lattice reduction and in surds
    /// under a square root.
    pub nested_max: u64,
}

impl Default for SurdBounds {
    fn default() -> Self {
        SurdBounds { max_int: 1_000_000, nested_max: 10_000 }
    }
}

/// Least digit count accepted by [`identify_surd`].
pub const MIN_SURD_DIGITS: u32 = 40;

const MAX_CF_TERMS: usize = 400;

/// Look for a closed form of `x`, trying in order a rational, the square
/// root of a rational, `(a + b√c)/d` (periodic continued fraction, then an
/// integer relation among 1, x, x²) and the square root of such a surd.
/// A form is accepted when it reproduces `x` to all but 10 of its digits.
/// Inputs carrying fewer than [`MIN_SURD_DIGITS`] digits give `None`.
pub fn identify_surd(x: &BigReal, bounds: SurdBounds) -> Option<SurdCandidate> {
    let prec = x.precision();
    if prec.digits < MIN_SURD_DIGITS {
        return None;
    }
    let want = prec.digits - 10;
    let cf = continued_fraction(x, MAX_CF_TERMS);
    let accept = |form: SurdForm| -> Option<SurdCandidate> {
        let value: BigReal = form.evaluate(&prec);
        let confidence = agreeing_digits(x, &value);
        (confidence >= want).then(|| SurdCandidate { form, value, cf_terms: cf.clone(), confidence })
    };
    let square = x.clone() * x;
    let max = BigInt::from(bounds.max_int);
    let nested = BigInt::from(bounds.nested_max);

    for (p, q) in convergents(&cf) {
        if p.abs() > max || q > max {
            break;
        }
        if let Some(c) = accept(SurdForm::Rational { p, q }) {
            return Some(c);
        }
    }
    for (p, q) in convergents(&continued_fraction(&square, MAX_CF_TERMS)) {
        if p.abs() > max || q > max {
            break;
        }
        if let Some(c) = accept(SurdForm::SqrtRational { negative: x.is_negative(), p, q }) {
            return Some(c);
        }
    }
    let quadratic = |form: (BigInt, BigInt, BigInt, BigInt)| {
        let (a, b, c, d) = form;
        accept(SurdForm::Quadratic { a, b, c, d })
    };
    if let Some(hit) = first_quadratic(x, &cf, &max, &nested, quadratic) {
        return Some(hit);
    }
    if !square.is_zero() {
        let cf2 = continued_fraction(&square, MAX_CF_TERMS);
        let nested_form = |form: (BigInt, BigInt, BigInt, BigInt)| {
            let (a, b, c, d) = form;
            accept(SurdForm::SqrtQuadratic { negative: x.is_negative(), a, b, c, d })
        };
        if let Some(hit) = first_quadratic(&square, &cf2, &nested, &nested, nested_form) {
            return Some(hit);
        }
    }
    None
}

/// Decimal digits on which two values agree: absolute agreement for values
/// below one, relative above.
fn agreeing_digits(x: &BigReal, y: &BigReal) -> u32 {
    let prec = x.precision();
    let diff = (x.clone() - y).abs();
    if diff.is_zero() {
        return prec.digits;
    }
    let scale = BigReal::max_of(x.abs(), BigReal::one(&prec));
    let rel = (diff / scale).to_f64();
    if rel <= 0.0 {
        return prec.digits;
    }
    (-rel.log10()).floor().clamp(0.0, prec.digits as f64) as u32
}

/// First accepted `(a, b, c, d)` with `x = (a + b√c)/d`, trying periodic
/// tails of the continued fraction (bounded by `cf_max`) and then integer
/// relations among 1, x, x² (bounded by `lll_max`).
fn first_quadratic<R>(
    x: &BigReal,
    cf: &[BigInt],
    cf_max: &BigInt,
    lll_max: &BigInt,
    mut accept: impl FnMut((BigInt, BigInt, BigInt, BigInt)) -> Option<R>,
) -> Option<R> {
    let xf = x.to_f64();
    for (pre, period) in periodic_tails(cf) {
        let rel = relation_from_period(&cf[..pre], &cf[pre..pre + period]);
        let rel = primitive(rel);
        if !relation_in_bounds(&rel, cf_max) {
            continue;
        }
        if let Some(hit) = quadratic_from_relation(&rel, xf).filter(|f| within(f, cf_max)).and_then(&mut accept) {
            return Some(hit);
        }
    }
    let prec = x.precision();
    let scale_digits = prec.digits.saturating_sub(10) as usize;
    let scale = BigReal::from_bigint(&prec, &num_traits::pow(BigInt::from(10), scale_digits));
    let to_int = |v: BigReal| {
        let (n, d) = (v * &scale).to_exact_ratio();
        BigRational::new(n, d).round().to_integer()
    };
    let scaled = [to_int(BigReal::one(&prec)), to_int(x.clone()), to_int(x.clone() * x)];
    for v in integer_relations(&scaled) {
        let rel = primitive([v[2].clone(), v[1].clone(), v[0].clone()]);
        if !relation_in_bounds(&rel, lll_max) {
            continue;
        }
        if let Some(hit) = quadratic_from_relation(&rel, xf).filter(|f| within(f, lll_max)).and_then(&mut accept) {
            return Some(hit);
        }
    }
    None
}

fn primitive(rel: [BigInt; 3]) -> [BigInt; 3] {
    let g = rel[0].gcd(&rel[1]).gcd(&rel[2]);
    if g.is_zero() || g.is_one() {
        rel
    } else {
        rel.map(|v| v / &g)
    }
}

fn within(form: &(BigInt, BigInt, BigInt, BigInt), max: &BigInt) -> bool {
    let (a, b, c, d) = form;
    a.abs() <= *max && b.abs() <= *max && c <= max && d <= max
}

/// `(preperiod, period)` pairs whose block repeats at least three times
/// until the end of the expansion, shortest first. The final term is
/// ignored because rounding may have changed it.
fn periodic_tails(cf: &[BigInt]) -> Vec<(usize, usize)> {
    if cf.len() < 4 {
        return Vec::new();
    }
    let body = &cf[..cf.len() - 1];
    let mut found = Vec::new();
    for total in 1..body.len() {
        for period in 1..=total {
            let pre = total - period;
            let tail = &body[pre..];
            if tail.len() < 3 * period {
                continue;
            }
            if (period..tail.len()).all(|i| tail[i] == tail[i - period]) {
                found.push((pre, period));
            }
        }
    }
    found
}

/// Coefficients `[p, q, r]` of `p x² + q x + r = 0` for
/// `x = [pre; repeat(period)]`.
fn relation_from_period(pre: &[BigInt], period: &[BigInt]) -> [BigInt; 3] {
    let last_two = |terms: &[BigInt]| -> (BigInt, BigInt, BigInt, BigInt) {
        let conv = convergents(terms);
        let (p1, q1) = conv.last().cloned().unwrap_or((BigInt::one(), BigInt::zero()));
        let (p0, q0) = if conv.len() >= 2 {
            conv[conv.len() - 2].clone()
        } else if conv.len() == 1 {
            (BigInt::one(), BigInt::zero())
        } else {
            (BigInt::zero(), BigInt::one())
        };
        (p1, p0, q1, q0)
    };
    // Purely periodic y = (P y + P')/(Q y + Q').
    let (pp, pp0, qq, qq0) = last_two(period);
    let (q, r, s) = (qq, &qq0 - &pp, -pp0);
    // x = (A y + A')/(B y + B'), so y = (B' x − A')/(A − B x).
    let (a, a0, b, b0) = last_two(pre);
    let x2 = &q * &b0 * &b0 - &r * &b * &b0 + &s * &b * &b;
    let x1 = BigInt::from(-2) * &q * &a0 * &b0 + &r * (&a * &b0 + &a0 * &b) - BigInt::from(2) * &s * &a * &b;
    let x0 = &q * &a0 * &a0 - &r * &a * &a0 + &s * &a * &a;
    [x2, x1, x0]
}

/// Root of `p x² + q x + r = 0` closest to `approx`, as reduced
/// `(a, b, c, d)` with `x = (a + b√c)/d`, `d > 0` and squarefree `c > 1`.
fn quadratic_from_relation(rel: &[BigInt; 3], approx: f64) -> Option<(BigInt, BigInt, BigInt, BigInt)> {
    let [p, q, r] = rel;
    if p.is_zero() {
        return None;
    }
    let disc = q * q - BigInt::from(4) * p * r;
    if disc <= BigInt::zero() {
        return None;
    }
    let (s, c) = split_square(&disc)?;
    if c.is_one() {
        return None;
    }
    let two_p = BigInt::from(2) * p;
    let mut best = None;
    for sign in [1i32, -1] {
        let (mut a, mut b, mut d) = (-q.clone(), &s * sign, two_p.clone());
        if d.is_negative() {
            (a, b, d) = (-a, -b, -d);
        }
        let g = a.gcd(&b).gcd(&d);
        let (a, b, d) = (a / &g, b / &g, d / &g);
        let val = (a.to_f64()? + b.to_f64()? * c.to_f64()?.sqrt()) / d.to_f64()?;
        let err = (val - approx).abs();
        if best.as_ref().is_none_or(|(e, _)| err < *e) {
            best = Some((err, (a, b, c.clone(), d)));
        }
    }
    best.map(|(_, f)| f)
}

/// `n = s² c` with `c` squarefree, by trial division up to 10⁶; `None`
/// when `n` exceeds 128 bits or a repeated factor above 10⁶ cannot be
/// ruled out.
fn split_square(n: &BigInt) -> Option<(BigInt, BigInt)> {
    let mut rest = n.to_u128()?;
    let (mut s, mut c) = (1u128, 1u128);
    let mut f = 2u128;
    while f <= 1_000_000 && f * f <= rest {
        while rest % (f * f) == 0 {
            rest /= f * f;
            s *= f;
        }
        if rest % f == 0 {
            rest /= f;
            c *= f;
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if f * f <= rest {
        // Every prime factor left exceeds 10⁶.
        let root = rest.isqrt();
        if root * root == rest {
            s *= root;
            rest = 1;
        } else if rest / f >= f * f {
            return None;
        }
    }
    Some((BigInt::from(s), BigInt::from(c) * BigInt::from(rest)))
}

/// Whether `p x² + q x + r` can come from `(a + b√c)/d` with every integer
/// at most `max`: the primitive relation has `|p| ≤ d²`, `|q| ≤ 2|a|d` and
/// `|r| ≤ a² + b²c`.
fn relation_in_bounds(rel: &[BigInt; 3], max: &BigInt) -> bool {
    let m2 = max * max;
    let [p, q, r] = rel;
    p.abs() <= m2 && q.abs() <= BigInt::from(2) * &m2 && r.abs() <= &m2 + &m2 * max
}
