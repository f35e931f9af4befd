//! Extended-precision Newton polishing of double-precision rules and
//! recognition of closed-form constants in the result.

mod lll;
mod surd;

pub use surd::{continued_fraction, convergents, identify_surd, SurdBounds, SurdCandidate, SurdForm, MIN_SURD_DIGITS};

use crate::bigreal::{BigReal, Precision};
use crate::error::{CubatureError, Result};
use crate::linalg::min_norm_solve;
use crate::moments::{build_moment_system_in, volume_in, MomentSystem, Region};
use crate::real::Real;
use crate::rule::{convert_from_gaussian, convert_gaussian, residuals, verify, CubatureRule};
use crate::search::jacobian;

/// A rule carried at extended precision.
#[derive(Clone, Debug)]
pub struct ExtendedRule {
    pub rule: CubatureRule<BigReal>,
    pub working_digits: u32,
    /// Largest absolute moment residual at the final iterate.
    pub max_residual: BigReal,
    /// Newton iterations taken, including the two confirmation steps.
    pub iterations: usize,
    /// Largest change of any coordinate or weight in the first iteration.
    pub first_step: f64,
    /// Whether every value printed at 32 digits moved by at most one unit
    /// in the last place over the confirmation steps.
    pub stable_32: bool,
}

/// Tolerance the double-precision input must verify to.
pub const REFINE_INPUT_TOL: f64 = 1e-8;

/// Iterations without a new smallest residual before giving up.
const DIVERGENCE_WINDOW: usize = 5;
const MAX_ITERATIONS: usize = 60;
const CONFIRMATION_STEPS: usize = 2;

/// Fewest working digits used when refining to degree `d`.
pub fn working_digits_for(d: u32) -> u32 {
    32 * d + 10
}

fn max_abs(v: &[BigReal]) -> BigReal {
    v.iter().fold(BigReal::zero(&v[0].ctx()), |m, x| BigReal::max_of(m, x.abs()))
}

fn newton_step(rule: &mut CubatureRule<BigReal>, system: &MomentSystem<BigReal>, res: &[BigReal], cut: &BigReal) -> Result<BigReal> {
    let jac = jacobian(rule, system)?;
    let rhs: Vec<BigReal> = res.iter().map(|r| -r.clone()).collect();
    let (delta, _) = min_norm_solve(&jac, &rhs, cut);
    let np = rule.points.len();
    for (x, d) in rule.points.iter_mut().zip(&delta) {
        *x = x.clone() + d;
    }
    for (w, d) in rule.weights.iter_mut().zip(&delta[np..]) {
        *w = w.clone() + d;
    }
    Ok(max_abs(&delta))
}

/// Newton iteration with minimum-norm steps on the full degree-`d` moment
/// system at `max(digits, 32d + 10)` digits, until the largest residual is
/// below `10^-(digits-5) · V`; then two further steps check that the
/// 32-digit values have settled.
pub fn refine_rule(rule: &CubatureRule<f64>, d: u32, digits: u32) -> Result<ExtendedRule> {
    let check = verify(rule, d, REFINE_INPUT_TOL);
    if !check.pass {
        return Err(CubatureError::Precondition(format!(
            "rule does not verify at degree {d} (max residual {:e}, tolerance {:e})",
            check.max_abs_residual, check.tolerance_used
        )));
    }
    let gaussian = rule.region == Region::GaussianProb;
    let working = digits.max(working_digits_for(d));
    let prec = Precision::from_digits(working);
    let mut current: CubatureRule<BigReal> = if gaussian { convert_gaussian(rule)? } else { rule.clone() }.cast(&prec);
    let system = build_moment_system_in::<BigReal>(&prec, current.region, current.n, d, 0)?;
    let threshold = BigReal::pow10_neg(&prec, working - 5) * volume_in::<BigReal>(&prec, current.region, current.n);
    let cut = BigReal::pow10_neg(&prec, working / 2);

    let mut res = residuals(&current, &system)?;
    let mut worst = max_abs(&res);
    let mut best = worst.clone();
    let mut since_best = 0;
    let mut iterations = 0;
    let mut first_step = None;
    while worst >= threshold {
        if iterations == MAX_ITERATIONS || since_best >= DIVERGENCE_WINDOW {
            return Err(CubatureError::Divergence { iterations, max_residual: worst.to_f64() });
        }
        let step = newton_step(&mut current, &system, &res, &cut)?;
        first_step.get_or_insert(step.to_f64());
        iterations += 1;
        res = residuals(&current, &system)?;
        worst = max_abs(&res);
        if worst < best {
            best = worst.clone();
            since_best = 0;
        } else {
            since_best += 1;
        }
    }
    let noise = BigReal::pow10_neg(&prec, working - 5);
    snap_noise(&mut current, &noise);
    res = residuals(&current, &system)?;
    let before = printed(&current);
    for _ in 0..CONFIRMATION_STEPS {
        let step = newton_step(&mut current, &system, &res, &cut)?;
        first_step.get_or_insert(step.to_f64());
        iterations += 1;
        res = residuals(&current, &system)?;
    }
    snap_noise(&mut current, &noise);
    let stable_32 = before.iter().zip(printed(&current)).all(|(a, b)| within_one_ulp(a, &b));
    let max_residual = max_abs(&res);
    let rule = if gaussian { convert_from_gaussian(&current)? } else { current }
        .with_degree(d)
        .with_provenance(format!("{} refined to {working} digits", rule.provenance));
    Ok(ExtendedRule { rule, working_digits: working, max_residual, iterations, first_step: first_step.unwrap_or(0.0), stable_32 })
}

/// Set coordinates and weights that are below `rel` times the largest of
/// their kind to exact zero; these are rounding noise around a zero.
fn snap_noise(rule: &mut CubatureRule<BigReal>, rel: &BigReal) {
    for values in [&mut rule.points, &mut rule.weights] {
        let cut = max_abs(values) * rel;
        for v in values.iter_mut() {
            if v.abs() < cut {
                *v = BigReal::zero(&v.ctx());
            }
        }
    }
}

fn printed(rule: &CubatureRule<BigReal>) -> Vec<String> {
    rule.points.iter().chain(&rule.weights).map(|v| v.to_sci_string(32)).collect()
}

/// Whether two 32-digit scientific strings differ by at most one unit in
/// the last place.
fn within_one_ulp(a: &str, b: &str) -> bool {
    if a == b {
        return true;
    }
    let parse = |s: &str| -> Option<(num_bigint::BigInt, i64)> {
        let (m, e) = s.split_once('e')?;
        let digits: String = m.chars().filter(|c| *c != '.').collect();
        Some((digits.parse().ok()?, e.parse().ok()?))
    };
    match (parse(a), parse(b)) {
        (Some((ma, ea)), Some((mb, eb))) => {
            // Align the exponents; a carry can shift one of them by one.
            let ten = num_bigint::BigInt::from(10);
            let (ma, mb) = match ea - eb {
                0 => (ma, mb),
                1 => (ma * &ten, mb),
                -1 => (ma, mb * &ten),
                _ => return false,
            };
            let diff = ma - mb;
            let limit = if ea == eb { num_bigint::BigInt::from(1) } else { ten };
            diff.magnitude() <= limit.magnitude()
        }
        _ => false,
    }
}

/// Largest absolute moment residual of `rule` over every monomial of
/// degree ≤ `d`, computed at the rule's own precision.
pub fn verify_extended<T: Real>(rule: &CubatureRule<T>, d: u32) -> Result<T> {
    let rule = if rule.region == Region::GaussianProb { convert_gaussian(rule)? } else { rule.clone() };
    let ctx = rule.weights[0].ctx();
    let system = build_moment_system_in::<T>(&ctx, rule.region, rule.n, d, 0)?;
    let res = residuals(&rule, &system)?;
    Ok(res.into_iter().fold(T::zero(&ctx), |m, r| T::max_of(m, r.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_paper_rule, build_paper_rule_f64, TableId};
    use crate::moments::volume;

    #[test]
    fn ulp_comparison() {
        assert!(within_one_ulp("1.25e0", "1.26e0"));
        assert!(!within_one_ulp("1.25e0", "1.27e0"));
        assert!(within_one_ulp("9.99e-1", "1.00e0"));
        assert!(!within_one_ulp("9.99e-1", "1.01e0"));
    }

    #[test]
    fn working_digits_follow_the_degree() {
        assert_eq!(working_digits_for(6), 202);
        assert_eq!(working_digits_for(7), 234);
    }

    #[test]
    fn refines_the_degree_six_rule_to_two_hundred_digits() {
        let rule = build_paper_rule_f64(TableId::T2_10_6, Region::ExpR2).unwrap();
        let out = refine_rule(&rule, 6, 202).unwrap();
        assert_eq!(out.working_digits, 202);
        let v = volume(Region::ExpR2, 2);
        let res = verify_extended(&out.rule, 6).unwrap();
        assert!(res < BigReal::pow10_neg(&Precision::from_digits(202), 190) * BigReal::from_f64(&Precision::from_digits(202), v));
        assert!(out.stable_32);
        // The first step only polishes: the input already verifies to 1e-9.
        assert!(out.first_step < 1e-7, "{}", out.first_step);
        let drift = rule.points.iter().zip(&out.rule.points).map(|(a, b)| (a - b.to_f64()).abs()).fold(0.0, f64::max);
        assert!(drift < 1e-7);
    }

    #[test]
    fn closed_form_rule_is_already_exact() {
        let prec = Precision::from_digits(64);
        let rule = build_paper_rule::<BigReal>(&prec, TableId::T5_22_4, Region::ExpR2).unwrap();
        assert!(verify_extended(&rule, 4).unwrap().to_f64() < 1e-55);
        let origin = CubatureRule::from_flat(Region::Ball, 3, vec![BigReal::zero(&prec); 3], vec![volume_in::<BigReal>(&prec, Region::Ball, 3)]).unwrap();
        assert!(verify_extended(&origin, 0).unwrap().is_zero());
    }

    #[test]
    fn rejects_rules_that_do_not_verify() {
        let mut rule = build_paper_rule_f64(TableId::T2_10_6, Region::ExpR2).unwrap();
        rule.weights[0] *= 1.01;
        assert!(matches!(refine_rule(&rule, 6, 100), Err(CubatureError::Precondition(_))));
    }
}
