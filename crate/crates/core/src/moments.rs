//! Monomial moments, volumes and constraint systems for the spherically
//! symmetric integrals, plus the Stroud and Möller lower bounds on point
//! counts.
//!
//! Every moment is exactly `q * π^(k/2)` with `q` rational, because Γ at the
//! half-integers reduces to factorials and powers of `√π`. Moments are built
//! in that exact form and only rounded when a working precision is chosen.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{CubatureError, Result};
use crate::real::Real;

/// Which integral a rule approximates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    /// Standard normal probability weight `(2π)^(-n/2) e^(-xᵀx/2)`.
    GaussianProb,
    /// All of ℝⁿ with weight `e^(-xᵀx)`.
    ExpR2,
    /// All of ℝⁿ with weight `e^(-|x|)`.
    ExpR,
    /// The unit ball with unit weight.
    Ball,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::GaussianProb, Region::ExpR2, Region::ExpR, Region::Ball];

    /// Short tag used in rule files.
    pub fn tag(self) -> &'static str {
        match self {
            Region::GaussianProb => "gaussian",
            Region::ExpR2 => "er2",
            Region::ExpR => "er",
            Region::Ball => "ball",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::GaussianProb => "GaussianProb",
            Region::ExpR2 => "ExpR2",
            Region::ExpR => "ExpR",
            Region::Ball => "Ball",
        })
    }
}

impl FromStr for Region {
    type Err = CubatureError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gaussian" | "gaussianprob" | "g" => Ok(Region::GaussianProb),
            "er2" | "e2r2" | "expr2" => Ok(Region::ExpR2),
            "er" | "e1r" | "expr" => Ok(Region::ExpR),
            "ball" | "s" | "sphere" => Ok(Region::Ball),
            _ => Err(CubatureError::InvalidInput(format!("unknown region `{s}`"))),
        }
    }
}

impl serde::Serialize for Region {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Region {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exponent vector of a monomial `x₁^α₁ ⋯ xₙ^αₙ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// `x_axis^power`.
    pub fn axis(n: usize, axis: usize, power: u32) -> Self {
        let mut e = vec![0; n];
        e[axis] = power;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn all_even(&self) -> bool {
        self.0.iter().all(|a| a % 2 == 0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// All multi-indices of total degree exactly `d`, in descending
/// lexicographic order (`x₁^d` first).
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<MultiIndex> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=left).rev() {
            prefix.push(a);
            rec(n, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Graded lexicographic enumeration of every index with `|α| ≤ d`.
pub fn graded_lex(n: usize, d: u32) -> Vec<MultiIndex> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

/// `q * π^(half_powers/2)` with `q` rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMoment {
    pub coeff: BigRational,
    pub half_powers_of_pi: u32,
}

impl ExactMoment {
    fn zero() -> Self {
        ExactMoment { coeff: BigRational::zero(), half_powers_of_pi: 0 }
    }

    pub fn to_real<T: Real>(&self, ctx: &T::Ctx) -> T {
        if self.coeff.is_zero() {
            return T::zero(ctx);
        }
        let q = T::from_rational(ctx, &self.coeff);
        q * pi_half_power::<T>(ctx, self.half_powers_of_pi)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_real::<f64>(&())
    }
}

/// `4/3·π`, `1/2·π^(3/2)`, `π^2`, `0`.
impl fmt::Display for ExactMoment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.half_powers_of_pi;
        if self.coeff.is_zero() || k == 0 {
            return write!(f, "{}", self.coeff);
        }
        if !self.coeff.is_one() {
            write!(f, "{}·", self.coeff)?;
        }
        match k {
            2 => f.write_str("π"),
            _ if k % 2 == 0 => write!(f, "π^{}", k / 2),
            _ => write!(f, "π^({k}/2)"),
        }
    }
}

/// `π^(k/2)` at working precision.
pub fn pi_half_power<T: Real>(ctx: &T::Ctx, k: u32) -> T {
    let pi = T::pi(ctx);
    let mut acc = pi.powu(k / 2);
    if k % 2 == 1 {
        acc = acc * pi.sqrt();
    }
    acc
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Γ(k/2) for k ≥ 1 as (rational, number of √π factors).
fn gamma_half(k: u64) -> (BigRational, u32) {
    assert!(k >= 1, "Γ(k/2) needs k ≥ 1");
    if k % 2 == 0 {
        (BigRational::from_integer(factorial(k / 2 - 1)), 0)
    } else {
        // Γ(m + 1/2) = (2m)! √π / (4^m m!)
        let m = (k - 1) / 2;
        let num = factorial(2 * m);
        let den = (BigInt::one() << (2 * m) as usize) * factorial(m);
        (BigRational::new(num, den), 1)
    }
}

fn check_region(region: Region) -> Result<()> {
    if region == Region::GaussianProb {
        Err(CubatureError::UnsupportedRegion(region))
    } else {
        Ok(())
    }
}

/// Exact moment `∫ x^α w(x) dx` over `region`.
pub fn exact_moment(region: Region, n: usize, alpha: &MultiIndex) -> Result<ExactMoment> {
    check_region(region)?;
    if alpha.dim() != n {
        return Err(CubatureError::DimensionMismatch { expected: n, got: alpha.dim() });
    }
    if !alpha.all_even() {
        return Ok(ExactMoment::zero());
    }
    let mut coeff = BigRational::one();
    let mut half = 0u32;
    for &a in alpha.exponents() {
        let (g, h) = gamma_half(a as u64 + 1);
        coeff *= g;
        half += h;
    }
    // Σβᵢ = (|α| + n)/2 in half units.
    let sum_beta_2 = alpha.total_degree() as u64 + n as u64;
    match region {
        Region::ExpR2 => {}
        Region::ExpR => {
            let (g, h) = gamma_half(sum_beta_2);
            coeff = coeff * BigRational::from_integer(BigInt::from(2) * factorial(sum_beta_2 - 1)) / g;
            half -= h;
        }
        Region::Ball => {
            let (g, h) = gamma_half(sum_beta_2 + 2);
            coeff /= g;
            half -= h;
        }
        Region::GaussianProb => unreachable!(),
    }
    Ok(ExactMoment { coeff, half_powers_of_pi: half })
}

/// Moment of `x^α` at working precision; zero whenever any exponent is odd.
pub fn monomial_moment_in<T: Real>(ctx: &T::Ctx, region: Region, n: usize, alpha: &MultiIndex) -> Result<T> {
    Ok(exact_moment(region, n, alpha)?.to_real(ctx))
}

/// Double-precision moment of `x^α`.
pub fn monomial_moment(region: Region, n: usize, alpha: &MultiIndex) -> Result<f64> {
    monomial_moment_in::<f64>(&(), region, n, alpha)
}

/// Exact total weight of the region.
pub fn exact_volume(region: Region, n: usize) -> ExactMoment {
    match region {
        Region::GaussianProb => ExactMoment { coeff: BigRational::one(), half_powers_of_pi: 0 },
        _ => exact_moment(region, n, &MultiIndex::zero(n)).expect("supported region"),
    }
}

pub fn volume_in<T: Real>(ctx: &T::Ctx, region: Region, n: usize) -> T {
    exact_volume(region, n).to_real(ctx)
}

/// Total weight `V` of the region (1 for the Gaussian probability measure).
pub fn volume(region: Region, n: usize) -> f64 {
    volume_in::<f64>(&(), region, n)
}

/// One moment constraint `Σ Wᵢ xᵢ^α = target`.
#[derive(Clone, Debug)]
pub struct Constraint<T> {
    pub alpha: MultiIndex,
    pub target: T,
    /// `(parent, axis)` with `alpha = parent + e_axis`; `None` for α = 0.
    pub parent: Option<(usize, usize)>,
    /// For each axis with a positive exponent: `(axis, exponent, index of α − e_axis)`.
    pub lowered: Vec<(usize, u32, usize)>,
}

/// The full set of moment equations a rule must satisfy.
#[derive(Clone, Debug)]
pub struct MomentSystem<T = f64> {
    pub region: Region,
    pub n: usize,
    pub degree: u32,
    pub extras: usize,
    pub constraints: Vec<Constraint<T>>,
}

impl<T: Real> MomentSystem<T> {
    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Number of constraints of total degree ≤ `degree`.
    pub fn base_len(&self) -> usize {
        self.constraints.len() - self.extras
    }

    pub fn targets(&self) -> Vec<T> {
        self.constraints.iter().map(|c| c.target.clone()).collect()
    }

    /// Values of every constrained monomial at `x`, in constraint order.
    pub fn monomial_values(&self, x: &[T], out: &mut Vec<T>) {
        out.clear();
        let one = T::one(&x[0].ctx());
        for c in &self.constraints {
            let v = match c.parent {
                None => one.clone(),
                Some((p, k)) => out[p].clone() * &x[k],
            };
            out.push(v);
        }
    }
}

/// Enumerate constraints for region, dimension, degree and `k_extras`
/// single-axis constraints of degree `d+1`, with targets at working precision.
pub fn build_moment_system_in<T: Real>(
    ctx: &T::Ctx,
    region: Region,
    n: usize,
    d: u32,
    k_extras: usize,
) -> Result<MomentSystem<T>> {
    check_region(region)?;
    if n == 0 {
        return Err(CubatureError::InvalidInput("dimension must be at least 1".into()));
    }
    if k_extras > n {
        return Err(CubatureError::InvalidInput(format!("{k_extras} extra constraints exceed dimension {n}")));
    }
    let mut indices = graded_lex(n, d);
    indices.extend((0..k_extras).map(|j| MultiIndex::axis(n, j, d + 1)));
    let position: HashMap<&MultiIndex, usize> = indices.iter().enumerate().map(|(i, a)| (a, i)).collect();

    // Moments depend only on the multiset of exponents.
    let mut cache: HashMap<Vec<u32>, T> = HashMap::new();
    let mut constraints = Vec::with_capacity(indices.len());
    for alpha in &indices {
        let target = if alpha.all_even() {
            let mut key = alpha.0.clone();
            key.sort_unstable();
            match cache.get(&key) {
                Some(v) => v.clone(),
                None => {
                    let v: T = monomial_moment_in(ctx, region, n, alpha)?;
                    cache.insert(key, v.clone());
                    v
                }
            }
        } else {
            T::zero(ctx)
        };
        let mut lowered = Vec::new();
        let mut parent = None;
        for (k, &a) in alpha.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut lower = alpha.clone();
            lower.0[k] -= 1;
            let idx = position[&lower];
            if parent.is_none() {
                parent = Some((idx, k));
            }
            lowered.push((k, a, idx));
        }
        constraints.push(Constraint { alpha: alpha.clone(), target, parent, lowered });
    }
    Ok(MomentSystem { region, n, degree: d, extras: k_extras, constraints })
}

/// Double-precision moment system.
pub fn build_moment_system(region: Region, n: usize, d: u32, k_extras: usize) -> Result<MomentSystem<f64>> {
    build_moment_system_in::<f64>(&(), region, n, d, k_extras)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n.saturating_sub(k));
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn binomial_u64(n: u64, k: u64) -> u64 {
    binomial(n, k).to_u64().expect("bound fits in u64")
}

/// Stroud's bound `C(n + ⌊d/2⌋, ⌊d/2⌋)`.
pub fn stroud_bound(n: u32, d: u32) -> u64 {
    binomial_u64(n as u64 + (d / 2) as u64, (d / 2) as u64)
}

/// Möller's bound for odd `d = 2s − 1`, summed exactly and rounded up.
pub fn moller_bound(n: u32, d: u32) -> Result<u64> {
    if d % 2 == 0 {
        return Err(CubatureError::EvenDegree(d));
    }
    let s = (d as u64 + 1) / 2;
    let n = n as u64;
    let mut total = BigRational::from_integer(binomial(n + s - 1, n));
    for k in 1..n {
        let dyadic = BigRational::new(BigInt::one(), BigInt::one() << (n - k) as usize);
        let term = if s % 2 == 0 {
            dyadic * BigRational::from_integer(binomial(k + s - 1, k))
        } else {
            (BigRational::one() - dyadic) * BigRational::from_integer(binomial(k + s - 2, k))
        };
        total += term;
    }
    Ok(total.ceil().to_integer().to_u64().expect("bound fits in u64"))
}

/// The bound used for point-count searches at any degree: Möller for odd
/// degree; for even degree the larger of Stroud and Möller at `d − 1`.
pub fn effective_bound(n: u32, d: u32) -> u64 {
    if d % 2 == 1 {
        moller_bound(n, d).expect("odd degree")
    } else if d >= 1 {
        stroud_bound(n, d).max(moller_bound(n, d - 1).expect("odd degree"))
    } else {
        stroud_bound(n, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn known_moments() {
        let m = |r, a: &[u32]| monomial_moment(r, a.len(), &MultiIndex(a.to_vec())).unwrap();
        assert!(rel(m(Region::ExpR2, &[4, 0]), 3.0 * PI / 4.0) < 1e-15);
        assert!(rel(m(Region::ExpR2, &[2, 2]), PI / 4.0) < 1e-15);
        assert_eq!(m(Region::Ball, &[1, 0, 0]), 0.0);
        assert!(rel(m(Region::Ball, &[0, 0]), PI) < 1e-15);
        assert!(rel(m(Region::ExpR, &[2, 0]), 6.0 * PI) < 1e-15);
    }

    #[test]
    fn exact_moments_print_in_closed_form() {
        assert_eq!(exact_volume(Region::Ball, 3).to_string(), "4/3·π");
        assert_eq!(exact_volume(Region::ExpR2, 3).to_string(), "π^(3/2)");
        assert_eq!(exact_volume(Region::ExpR2, 4).to_string(), "π^2");
        let odd = exact_moment(Region::Ball, 2, &MultiIndex(vec![1, 0])).unwrap();
        assert_eq!(odd.to_string(), "0");
    }

    #[test]
    fn known_volumes() {
        assert!(rel(volume(Region::ExpR2, 5), PI.powf(2.5)) < 1e-15);
        assert!(rel(volume(Region::Ball, 2), PI) < 1e-15);
        assert!(rel(volume(Region::ExpR, 2), 2.0 * PI) < 1e-15);
        assert!(rel(volume(Region::Ball, 3), 4.0 * PI / 3.0) < 1e-15);
        assert_eq!(volume(Region::GaussianProb, 4), 1.0);
    }

    #[test]
    fn gaussian_needs_conversion() {
        assert!(matches!(
            monomial_moment(Region::GaussianProb, 1, &MultiIndex(vec![2])),
            Err(CubatureError::UnsupportedRegion(_))
        ));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert!(matches!(
            monomial_moment(Region::Ball, 3, &MultiIndex(vec![2, 0])),
            Err(CubatureError::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn system_sizes_and_order() {
        let s = build_moment_system(Region::ExpR2, 2, 4, 0).unwrap();
        assert_eq!(s.len(), 15);
        let order: Vec<_> = s.constraints.iter().take(6).map(|c| c.alpha.0.clone()).collect();
        assert_eq!(order, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
        let s = build_moment_system(Region::Ball, 1, 0, 0).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.constraints[0].target, 2.0);
        let s = build_moment_system(Region::ExpR, 3, 3, 2).unwrap();
        assert_eq!(s.len(), 20 + 2);
        assert_eq!(s.constraints[21].alpha.0, vec![0, 4, 0]);
    }

    #[test]
    fn parent_links_rebuild_monomials() {
        let s = build_moment_system(Region::Ball, 3, 5, 1).unwrap();
        let x = [0.3, -1.2, 0.7];
        let mut v = Vec::new();
        s.monomial_values(&x, &mut v);
        for (c, val) in s.constraints.iter().zip(&v) {
            let direct: f64 = c.alpha.0.iter().zip(&x).map(|(&a, xi)| xi.powi(a as i32)).product();
            assert!((direct - val).abs() < 1e-14);
        }
    }

    #[test]
    fn bound_examples() {
        assert_eq!(stroud_bound(2, 6), 10);
        assert_eq!(stroud_bound(4, 8), 70);
        assert_eq!(stroud_bound(1, 0), 1);
        assert_eq!(moller_bound(7, 7).unwrap(), 182);
        assert_eq!(moller_bound(6, 7).unwrap(), 124);
        assert_eq!(moller_bound(4, 9).unwrap(), 91);
        assert!(moller_bound(4, 8).is_err());
        assert_eq!(effective_bound(2, 8), 15);
        assert_eq!(effective_bound(4, 6), 35);
        assert_eq!(effective_bound(3, 4), 10);
        assert_eq!(effective_bound(1, 0), 1);
    }

    #[test]
    fn moller_dominates_stroud() {
        for n in 1..=11 {
            for d in [3, 5, 7, 9] {
                assert!(moller_bound(n, d).unwrap() >= stroud_bound(n, d), "n={n} d={d}");
            }
        }
    }

    /// Independent oracle: radial × angular separation with Gauss-Legendre
    /// on the radial integral and the angular moment from the closed form
    /// ∫_{S^{n-1}} u^α = 2 ΠΓ(βᵢ)/Γ(Σβ), with the half-integer gamma
    /// values built by recurrence in floating point.
    fn oracle_moment(region: Region, alpha: &[u32]) -> f64 {
        let n = alpha.len();
        fn gamma_half_f(k: u32) -> f64 {
            // Γ(k/2) by the recurrence from Γ(1/2) and Γ(1).
            let mut g = if k % 2 == 0 { 1.0 } else { PI.sqrt() };
            let mut x = if k % 2 == 0 { 1.0 } else { 0.5 };
            while 2.0 * x < k as f64 {
                g *= x;
                x += 1.0;
            }
            g
        }
        let beta_sum2: u32 = alpha.iter().map(|a| a + 1).sum();
        let angular = 2.0 * alpha.iter().map(|&a| gamma_half_f(a + 1)).product::<f64>() / gamma_half_f(beta_sum2);
        let p = alpha.iter().sum::<u32>() as i32 + n as i32 - 1;
        // Radial part ∫ r^p w(r) dr by composite Simpson on a truncated range.
        let (upper, w): (f64, Box<dyn Fn(f64) -> f64>) = match region {
            Region::ExpR2 => (12.0, Box::new(|r: f64| (-r * r).exp())),
            Region::ExpR => (80.0, Box::new(|r: f64| (-r).exp())),
            Region::Ball => (1.0, Box::new(|_| 1.0)),
            Region::GaussianProb => unreachable!(),
        };
        let m = 20000;
        let h = upper / m as f64;
        let mut s = 0.0;
        for i in 0..=m {
            let r = i as f64 * h;
            let c = if i == 0 || i == m { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            s += c * r.powi(p) * w(r);
        }
        angular * s * h / 3.0
    }

    proptest! {
        #[test]
        fn odd_exponents_vanish(n in 1usize..5, seed in proptest::collection::vec(0u32..5, 4), odd_axis in 0usize..4) {
            let mut a: Vec<u32> = seed[..n].to_vec();
            let k = odd_axis % n;
            a[k] = 2 * a[k] + 1;
            for r in [Region::ExpR2, Region::ExpR, Region::Ball] {
                prop_assert_eq!(monomial_moment(r, n, &MultiIndex(a.clone())).unwrap(), 0.0);
            }
        }

        #[test]
        fn even_moments_match_radial_oracle(n in 1usize..5, half in proptest::collection::vec(0u32..4, 4)) {
            let a: Vec<u32> = half[..n].iter().map(|h| 2 * h).collect();
            prop_assume!(a.iter().sum::<u32>() <= 6);
            for r in [Region::ExpR2, Region::ExpR, Region::Ball] {
                let exact = monomial_moment(r, n, &MultiIndex(a.clone())).unwrap();
                let approx = oracle_moment(r, &a);
                prop_assert!(rel(exact, approx) < 5e-3, "{r} {a:?}: {exact} vs {approx}");
            }
        }

        #[test]
        fn zero_index_is_volume(n in 1usize..9) {
            for r in [Region::ExpR2, Region::ExpR, Region::Ball] {
                let m = exact_moment(r, n, &MultiIndex::zero(n)).unwrap();
                prop_assert_eq!(m, exact_volume(r, n));
            }
        }
    }

    #[test]
    fn base_counts_are_binomial() {
        for n in 1..=8usize {
            for d in 0..=8u32 {
                assert_eq!(graded_lex(n, d).len() as u64, binomial_u64(n as u64 + d as u64, d as u64));
            }
        }
    }
}
