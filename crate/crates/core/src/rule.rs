//! Cubature rules, exactness checks, evaluation and quality metrics.

use std::fmt;

use crate::error::{CubatureError, Result};
use crate::moments::{build_moment_system_in, pi_half_power, volume_in, MomentSystem, MultiIndex, Region};
use crate::real::Real;

/// `N` weighted points in `n` dimensions approximating one region's integral.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct CubatureRule<T = f64> {
    pub region: Region,
    pub n: usize,
    /// Row-major `N × n` coordinates.
    pub points: Vec<T>,
    pub weights: Vec<T>,
    pub claimed_degree: Option<u32>,
    pub provenance: String,
}

impl<T: Real> CubatureRule<T> {
    /// Build from per-point rows, checking shapes and finiteness.
    pub fn new(region: Region, n: usize, rows: Vec<Vec<T>>, weights: Vec<T>) -> Result<Self> {
        if rows.len() != weights.len() {
            return Err(CubatureError::DimensionMismatch { expected: rows.len(), got: weights.len() });
        }
        let mut points = Vec::with_capacity(rows.len() * n);
        for row in rows {
            if row.len() != n {
                return Err(CubatureError::DimensionMismatch { expected: n, got: row.len() });
            }
            points.extend(row);
        }
        Self::from_flat(region, n, points, weights)
    }

    pub fn from_flat(region: Region, n: usize, points: Vec<T>, weights: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(CubatureError::InvalidInput("dimension must be at least 1".into()));
        }
        if weights.is_empty() {
            return Err(CubatureError::InvalidInput("a rule needs at least one point".into()));
        }
        if points.len() != weights.len() * n {
            return Err(CubatureError::DimensionMismatch { expected: weights.len() * n, got: points.len() });
        }
        if !points.iter().chain(&weights).all(Real::is_finite) {
            return Err(CubatureError::InvalidInput("non-finite coordinate or weight".into()));
        }
        Ok(CubatureRule { region, n, points, weights, claimed_degree: None, provenance: String::new() })
    }

    pub fn with_degree(mut self, d: u32) -> Self {
        self.claimed_degree = Some(d);
        self
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = p.into();
        self
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.points[i * self.n..(i + 1) * self.n]
    }

    pub fn point_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.points[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.points.chunks(self.n)
    }

    pub fn radius(&self, i: usize) -> T {
        let ctx = self.weights[0].ctx();
        self.point(i).iter().fold(T::zero(&ctx), |s, x| s + x.clone() * x).sqrt()
    }

    pub fn radii(&self) -> Vec<T> {
        (0..self.len()).map(|i| self.radius(i)).collect()
    }

    pub fn weight_sum(&self) -> T {
        let ctx = self.weights[0].ctx();
        self.weights.iter().fold(T::zero(&ctx), |s, w| s + w)
    }

    /// Convert every value to another scalar type through its exact value.
    pub fn cast<U: Real>(&self, ctx: &U::Ctx) -> CubatureRule<U> {
        let conv = |v: &T| {
            let (num, den) = v.to_exact_ratio();
            U::from_big_ratio(ctx, &num, &den)
        };
        CubatureRule {
            region: self.region,
            n: self.n,
            points: self.points.iter().map(conv).collect(),
            weights: self.weights.iter().map(conv).collect(),
            claimed_degree: self.claimed_degree,
            provenance: self.provenance.clone(),
        }
    }

    /// Keep only the points whose index satisfies `keep`.
    pub fn retain_points(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut out = self.clone();
        out.points.clear();
        out.weights.clear();
        for i in 0..self.len() {
            if keep(i) {
                out.points.extend_from_slice(self.point(i));
                out.weights.push(self.weights[i].clone());
            }
        }
        out
    }
}

/// Outcome of checking a rule against all moments up to one degree.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct VerificationReport {
    pub degree_checked: u32,
    pub max_abs_residual: f64,
    #[serde(serialize_with = "serialize_index")]
    pub worst_constraint: MultiIndex,
    pub pass: bool,
    pub tolerance_used: f64,
}

fn serialize_index<S: serde::Serializer>(m: &MultiIndex, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&m.0, s)
}

/// `Σᵢ Wᵢ xᵢ^α − target` for every constraint, in system order.
pub fn residuals<T: Real>(rule: &CubatureRule<T>, system: &MomentSystem<T>) -> Result<Vec<T>> {
    if system.n != rule.n {
        return Err(CubatureError::DimensionMismatch { expected: system.n, got: rule.n });
    }
    if system.region != rule.region {
        return Err(CubatureError::InvalidInput(format!(
            "rule targets {} but the system is for {}",
            rule.region, system.region
        )));
    }
    let ctx = rule.weights[0].ctx();
    let mut acc = vec![T::zero(&ctx); system.len()];
    let mut vals = Vec::with_capacity(system.len());
    for (i, w) in rule.weights.iter().enumerate() {
        system.monomial_values(rule.point(i), &mut vals);
        for (a, v) in acc.iter_mut().zip(&vals) {
            *a = a.clone() + v.clone() * w;
        }
    }
    Ok(acc.into_iter().zip(&system.constraints).map(|(a, c)| a - &c.target).collect())
}

/// Rule in a region that has its own moment formulas (Gaussian rules are
/// mapped to the `e^(-xᵀx)` convention first).
fn moment_form<T: Real>(rule: &CubatureRule<T>) -> std::borrow::Cow<'_, CubatureRule<T>> {
    if rule.region == Region::GaussianProb {
        std::borrow::Cow::Owned(convert_gaussian(rule).expect("gaussian source"))
    } else {
        std::borrow::Cow::Borrowed(rule)
    }
}

fn max_abs<T: Real>(res: &[T]) -> (T, usize) {
    let ctx = res[0].ctx();
    let mut best = T::zero(&ctx);
    let mut at = 0;
    for (j, r) in res.iter().enumerate() {
        let a = r.abs();
        if a > best {
            best = a;
            at = j;
        }
    }
    (best, at)
}

/// Check all moments of degree ≤ `d`; pass iff the largest residual is at
/// most `tol_rel × V`.
pub fn verify<T: Real>(rule: &CubatureRule<T>, d: u32, tol_rel: f64) -> VerificationReport {
    let rule = moment_form(rule);
    let ctx = rule.weights[0].ctx();
    let system = build_moment_system_in::<T>(&ctx, rule.region, rule.n, d, 0).expect("valid region");
    let res = residuals(&rule, &system).expect("matching system");
    let (worst, at) = max_abs(&res);
    let tol = volume_in::<T>(&ctx, rule.region, rule.n) * T::from_f64(&ctx, tol_rel);
    VerificationReport {
        degree_checked: d,
        max_abs_residual: worst.to_f64(),
        worst_constraint: system.constraints[at].alpha.clone(),
        pass: worst <= tol,
        tolerance_used: tol.to_f64(),
    }
}

/// Largest `d ≤ d_max` such that every moment of degree ≤ `d` passes;
/// −1 when even the total weight is wrong.
pub fn detected_degree<T: Real>(rule: &CubatureRule<T>, tol_rel: f64, d_max: u32) -> i32 {
    let rule = moment_form(rule);
    let ctx = rule.weights[0].ctx();
    let system = build_moment_system_in::<T>(&ctx, rule.region, rule.n, d_max, 0).expect("valid region");
    let res = residuals(&rule, &system).expect("matching system");
    let tol = volume_in::<T>(&ctx, rule.region, rule.n) * T::from_f64(&ctx, tol_rel);
    for (c, r) in system.constraints.iter().zip(&res) {
        if r.abs() > tol {
            return c.alpha.total_degree() as i32 - 1;
        }
    }
    d_max as i32
}

/// `Σ Wᵢ f(xᵢ)`.
pub fn evaluate(rule: &CubatureRule<f64>, f: impl Fn(&[f64]) -> f64) -> f64 {
    rule.rows().zip(&rule.weights).map(|(x, w)| w * f(x)).sum()
}

/// `Σ Wᵢ f(xᵢ)` for integrands that may fail; the first failure is returned.
pub fn try_evaluate<E>(rule: &CubatureRule<f64>, f: impl Fn(&[f64]) -> std::result::Result<f64, E>) -> std::result::Result<f64, E> {
    let mut s = 0.0;
    for (x, w) in rule.rows().zip(&rule.weights) {
        s += w * f(x)?;
    }
    Ok(s)
}

/// `Σ|Wᵢ| / Σ Wᵢ`; equals 1 exactly for positive weights.
pub fn stability_factor(rule: &CubatureRule<f64>) -> Result<f64> {
    let sum: f64 = rule.weights.iter().sum();
    if sum == 0.0 {
        return Err(CubatureError::ZeroWeightSum);
    }
    if rule.weights.iter().all(|w| *w > 0.0) {
        return Ok(1.0);
    }
    Ok(rule.weights.iter().map(|w| w.abs()).sum::<f64>() / sum)
}

/// Where a ball rule's points sit relative to the unit sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    Inside,
    Boundary,
    Outside,
}

/// Weight sign and (for ball rules) point placement, e.g. `PB` or `NO`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quality {
    pub positive: bool,
    pub placement: Option<Placement>,
}

impl fmt::Display for Quality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.positive { "P" } else { "N" })?;
        if let Some(p) = self.placement {
            f.write_str(match p {
                Placement::Inside => "I",
                Placement::Boundary => "B",
                Placement::Outside => "O",
            })?;
        }
        Ok(())
    }
}

/// Default distance from radius 1 within which a point counts as on the sphere.
pub const BOUNDARY_TOL: f64 = 1e-9;

pub fn quality_of(rule: &CubatureRule<f64>, boundary_tol: f64) -> Quality {
    let positive = rule.weights.iter().all(|w| *w > 0.0);
    let placement = (rule.region == Region::Ball).then(|| {
        let rmax = rule.radii().into_iter().fold(0.0, f64::max);
        if rmax > 1.0 + boundary_tol {
            Placement::Outside
        } else if (rmax - 1.0).abs() <= boundary_tol {
            Placement::Boundary
        } else {
            Placement::Inside
        }
    });
    Quality { positive, placement }
}

fn rescale<T: Real>(rule: &CubatureRule<T>, to: Region, point_scale: &T, weight_scale: &T) -> CubatureRule<T> {
    CubatureRule {
        region: to,
        n: rule.n,
        points: rule.points.iter().map(|x| x.clone() * point_scale).collect(),
        weights: rule.weights.iter().map(|w| w.clone() * weight_scale).collect(),
        claimed_degree: rule.claimed_degree,
        provenance: rule.provenance.clone(),
    }
}

/// Gaussian probability rule → `e^(-xᵀx)` rule: `bᵢ = xᵢ/√2`, `Bᵢ = π^(n/2) Wᵢ`.
pub fn convert_gaussian<T: Real>(rule: &CubatureRule<T>) -> Result<CubatureRule<T>> {
    if rule.region != Region::GaussianProb {
        return Err(CubatureError::UnsupportedRegion(rule.region));
    }
    let ctx = rule.weights[0].ctx();
    let inv_sqrt2 = T::one(&ctx) / T::from_i64(&ctx, 2).sqrt();
    Ok(rescale(rule, Region::ExpR2, &inv_sqrt2, &pi_half_power::<T>(&ctx, rule.n as u32)))
}

/// Inverse of [`convert_gaussian`].
pub fn convert_from_gaussian<T: Real>(rule: &CubatureRule<T>) -> Result<CubatureRule<T>> {
    if rule.region != Region::ExpR2 {
        return Err(CubatureError::UnsupportedRegion(rule.region));
    }
    let ctx = rule.weights[0].ctx();
    let sqrt2 = T::from_i64(&ctx, 2).sqrt();
    let inv_vol = T::one(&ctx) / pi_half_power::<T>(&ctx, rule.n as u32);
    Ok(rescale(rule, Region::GaussianProb, &sqrt2, &inv_vol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::volume;
    use std::f64::consts::PI;

    fn origin_rule(region: Region, n: usize) -> CubatureRule {
        CubatureRule::from_flat(region, n, vec![0.0; n], vec![volume(region, n)]).unwrap()
    }

    /// Classical cross rule `(±r, 0, …)_S` with weight V/(2n), exact at degree 3.
    fn cross_rule(n: usize) -> CubatureRule {
        let v = volume(Region::ExpR2, n);
        let second = PI.powf(n as f64 / 2.0) / 2.0;
        let w = v / (2 * n) as f64;
        let r = (second / (2.0 * w)).sqrt();
        let mut rows = Vec::new();
        for k in 0..n {
            for s in [1.0, -1.0] {
                let mut x = vec![0.0; n];
                x[k] = s * r;
                rows.push(x);
            }
        }
        CubatureRule::new(Region::ExpR2, n, rows, vec![w; 2 * n]).unwrap()
    }

    #[test]
    fn origin_rule_has_degree_one() {
        for r in [Region::ExpR2, Region::ExpR, Region::Ball] {
            let rule = origin_rule(r, 3);
            assert!(verify(&rule, 0, 1e-14).pass);
            assert_eq!(detected_degree(&rule, 1e-12, 6), 1);
        }
    }

    #[test]
    fn cross_rule_is_degree_three() {
        let rule = cross_rule(3);
        assert!(verify(&rule, 3, 1e-13).pass);
        let fail = verify(&rule, 4, 1e-13);
        assert!(!fail.pass);
        assert_eq!(fail.worst_constraint.total_degree(), 4);
        assert_eq!(detected_degree(&rule, 1e-12, 8), 3);
    }

    #[test]
    fn wrong_total_weight_gives_minus_one() {
        let mut rule = origin_rule(Region::Ball, 2);
        rule.weights[0] = 1.0;
        assert_eq!(detected_degree(&rule, 1e-12, 4), -1);
    }

    #[test]
    fn evaluate_constant_is_weight_sum() {
        let rule = cross_rule(4);
        assert!((evaluate(&rule, |_| 1.0) - rule.weight_sum()).abs() < 1e-14);
        let r: std::result::Result<f64, &str> = try_evaluate(&rule, |x| if x[0] > 0.0 { Err("outside") } else { Ok(1.0) });
        assert_eq!(r, Err("outside"));
    }

    #[test]
    fn stability_and_quality() {
        let mut rule = origin_rule(Region::Ball, 2);
        assert_eq!(stability_factor(&rule).unwrap(), 1.0);
        assert_eq!(quality_of(&rule, BOUNDARY_TOL).to_string(), "PI");
        rule.weights[0] = 0.0;
        assert!(matches!(stability_factor(&rule), Err(CubatureError::ZeroWeightSum)));
        let rule = CubatureRule::new(Region::ExpR2, 1, vec![vec![0.0], vec![1.0]], vec![3.0, -1.0]).unwrap();
        assert_eq!(stability_factor(&rule).unwrap(), 2.0);
        assert_eq!(quality_of(&rule, BOUNDARY_TOL).to_string(), "N");
        let rule = CubatureRule::new(Region::Ball, 2, vec![vec![0.6, 0.8], vec![1.0, 1.0]], vec![1.0, 1.0]).unwrap();
        assert_eq!(quality_of(&rule, BOUNDARY_TOL).to_string(), "PO");
        let rule = rule.retain_points(|i| i == 0);
        assert_eq!(quality_of(&rule, BOUNDARY_TOL).to_string(), "PB");
    }

    #[test]
    fn gaussian_round_trip() {
        let e = cross_rule(3);
        let g = convert_from_gaussian(&e).unwrap();
        assert!((g.weight_sum() - 1.0).abs() < 1e-15);
        assert!(verify(&g, 3, 1e-13).pass);
        let back = convert_gaussian(&g).unwrap();
        for (a, b) in back.points.iter().chain(&back.weights).zip(e.points.iter().chain(&e.weights)) {
            assert!((a - b).abs() <= 1e-14 * b.abs().max(1.0));
        }
        assert!(convert_gaussian(&e).is_err());
        assert!(convert_from_gaussian(&g).is_err());
    }

    #[test]
    fn shape_errors() {
        assert!(CubatureRule::new(Region::Ball, 2, vec![vec![0.0]], vec![1.0]).is_err());
        assert!(CubatureRule::<f64>::from_flat(Region::Ball, 2, vec![], vec![]).is_err());
        assert!(CubatureRule::from_flat(Region::Ball, 1, vec![f64::NAN], vec![1.0]).is_err());
        let rule = origin_rule(Region::Ball, 2);
        let sys = crate::moments::build_moment_system(Region::Ball, 3, 1, 0).unwrap();
        assert!(residuals(&rule, &sys).is_err());
    }
}
