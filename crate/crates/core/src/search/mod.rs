//! Direct search for rules: random starts, Newton-type zero finding on the
//! moment residuals, restarts, pruning and bisection over the point count.

mod step;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{CubatureError, Result};
use crate::linalg::Mat;
use crate::moments::{build_moment_system, effective_bound, monomial_moment, volume, MomentSystem, MultiIndex, Region};
use crate::real::Real;
use crate::rule::{residuals, CubatureRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    /// Gauss-Newton with a truncated pseudoinverse, falling back to damped
    /// steps when a full step does not reduce the residual.
    GaussNewtonPinv,
    LevenbergMarquardt,
}

impl std::str::FromStr for Solver {
    type Err = CubatureError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "gauss_newton_pinv" | "gauss_newton" | "gn" | "pinv" => Ok(Solver::GaussNewtonPinv),
            "levenberg_marquardt" | "lm" => Ok(Solver::LevenbergMarquardt),
            other => Err(CubatureError::InvalidInput(format!("unknown solver `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub region: Region,
    pub n: usize,
    pub degree: u32,
    /// Number of points N.
    pub points: usize,
    /// Extra single-axis constraints of degree d+1.
    pub extras: usize,
    pub seed: u64,
    pub max_restarts: u32,
    pub solver: Solver,
    /// Success threshold on max |residual|, relative to the region volume.
    pub residual_tol: f64,
    /// Number of consecutive residual norms examined by the stall rule.
    pub stall_window: usize,
    /// Minimum relative decrease required across the stall window.
    pub stall_factor: f64,
    pub max_iterations: usize,
    /// Points with |W| below this multiple of V/N are dropped when pruning.
    pub prune_weight_rel: f64,
    /// Points closer than this multiple of the RMS radius are merged.
    pub merge_distance_rel: f64,
    /// Singular values below this multiple of the largest are discarded.
    pub pinv_cut: f64,
}

impl SearchConfig {
    pub fn new(region: Region, n: usize, degree: u32, points: usize) -> Self {
        SearchConfig {
            region,
            n,
            degree,
            points,
            extras: 0,
            seed: 0,
            max_restarts: 20,
            solver: Solver::GaussNewtonPinv,
            residual_tol: 1e-11,
            stall_window: 7,
            stall_factor: 0.07,
            max_iterations: 200,
            prune_weight_rel: 1e-8,
            merge_distance_rel: 1e-6,
            pinv_cut: 1e-12,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, r: u32) -> Self {
        self.max_restarts = r;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(CubatureError::InvalidInput(m.to_string()));
        if self.region == Region::GaussianProb {
            return Err(CubatureError::UnsupportedRegion(self.region));
        }
        if self.n == 0 {
            return bad("dimension must be at least 1");
        }
        if self.points == 0 {
            return bad("point count must be at least 1");
        }
        if self.extras > self.n {
            return bad("more extra constraints than dimensions");
        }
        if !(self.residual_tol > 0.0) || !(self.stall_factor > 0.0) || self.stall_window < 2 {
            return bad("tolerances and stall parameters must be positive");
        }
        if !(self.pinv_cut > 0.0) {
            return bad("pseudoinverse cut must be positive");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    Stalled,
    MaxIterations,
    MaxRestarts,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub outcome: Outcome,
    pub restarts_used: u32,
    /// Iterations taken by each attempt, in order.
    pub iterations: Vec<usize>,
    pub final_max_residual: f64,
    pub points: usize,
    pub rule: Option<CubatureRule>,
    pub seed: u64,
}

impl SearchReport {
    pub fn is_success(&self) -> bool {
        self.outcome == Outcome::Success
    }
}

/// Index of the first step at which the last `window` norms show a
/// relative decrease smaller than `factor`, i.e. the first `t ≥ window−1`
/// with `trace[t] > (1 − factor)·trace[t − window + 1]`.
pub fn stall_index(trace: &[f64], window: usize, factor: f64) -> Option<usize> {
    let span = window.saturating_sub(1).max(1);
    (span..trace.len()).find(|&t| trace[t] > (1.0 - factor) * trace[t - span])
}

/// Random starting rule for attempt `restart`: standard normal points,
/// weights `e^(−‖x‖)` normalized to the volume, and one global scale that
/// matches the trace of the second-moment targets.
pub fn initialize(config: &SearchConfig, restart: u32) -> Result<CubatureRule> {
    config.validate()?;
    let (n, count) = (config.n, config.points);
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    rng.set_stream(restart as u64);
    let mut points: Vec<f64>;
    loop {
        points = (0..n * count).map(|_| StandardNormal.sample(&mut rng)).collect();
        if points.iter().any(|x| *x != 0.0) {
            break;
        }
    }
    let v = volume(config.region, n);
    let mut weights: Vec<f64> = points.chunks(n).map(|p| (-norm(p)).exp()).collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w *= v / total);
    let target = second_moment_trace(config.region, n)?;
    let current: f64 = points.chunks(n).zip(&weights).map(|(p, w)| w * norm2(p)).sum();
    let s = (target / current).sqrt();
    points.iter_mut().for_each(|x| *x *= s);
    Ok(CubatureRule::from_flat(config.region, n, points, weights)?.with_provenance(format!("search seed {} restart {restart}", config.seed)))
}

fn second_moment_trace(region: Region, n: usize) -> Result<f64> {
    Ok(n as f64 * monomial_moment(region, n, &MultiIndex::axis(n, 0, 2))?)
}

fn norm2(p: &[f64]) -> f64 {
    p.iter().map(|x| x * x).sum()
}

fn norm(p: &[f64]) -> f64 {
    norm2(p).sqrt()
}

/// Derivatives of every residual with respect to the unknowns, ordered as
/// all coordinates (point-major) followed by all weights.
pub fn jacobian<T: Real>(rule: &CubatureRule<T>, system: &MomentSystem<T>) -> Result<Mat<T>> {
    if system.n != rule.n {
        return Err(CubatureError::DimensionMismatch { expected: system.n, got: rule.n });
    }
    let (n, count) = (rule.n, rule.len());
    let ctx = rule.weights[0].ctx();
    let mut jac = Mat::zeros(&ctx, system.len(), (n + 1) * count);
    let mut vals = Vec::with_capacity(system.len());
    for i in 0..count {
        system.monomial_values(rule.point(i), &mut vals);
        let w = &rule.weights[i];
        for (j, c) in system.constraints.iter().enumerate() {
            jac.set(j, n * count + i, vals[j].clone());
            for &(k, a, lower) in &c.lowered {
                let d = w.clone() * T::from_i64(&ctx, a as i64) * &vals[lower];
                jac.set(j, i * n + k, d);
            }
        }
    }
    Ok(jac)
}

fn to_dmatrix(m: &Mat<f64>) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows, m.cols, &m.data)
}

fn apply_step(rule: &CubatureRule, delta: &DVector<f64>) -> CubatureRule {
    let mut out = rule.clone();
    let np = rule.points.len();
    for (x, d) in out.points.iter_mut().zip(delta.iter()) {
        *x += d;
    }
    for (w, d) in out.weights.iter_mut().zip(delta.iter().skip(np)) {
        *w += d;
    }
    out
}

struct Eval {
    res: DVector<f64>,
    norm: f64,
    max_abs: f64,
}

fn evaluate_residuals(rule: &CubatureRule, system: &MomentSystem) -> Option<Eval> {
    let r = residuals(rule, system).ok()?;
    let res = DVector::from_vec(r);
    let norm = res.norm();
    norm.is_finite().then(|| Eval { max_abs: res.amax(), norm, res })
}

/// Run one zero-finding attempt from `start`.
pub fn solve(start: &CubatureRule, system: &MomentSystem, config: &SearchConfig) -> SearchReport {
    let tol = config.residual_tol * volume(system.region, system.n);
    let mut rule = start.clone();
    let mut trace = Vec::new();
    let mut lambda: Option<f64> = None;
    let report = |outcome, iterations, max_abs, rule: Option<CubatureRule>| SearchReport {
        outcome,
        restarts_used: 1,
        iterations: vec![iterations],
        final_max_residual: max_abs,
        points: start.len(),
        rule,
        seed: config.seed,
    };
    let Some(mut cur) = evaluate_residuals(&rule, system) else {
        return report(Outcome::Stalled, 0, f64::INFINITY, None);
    };
    for it in 0..=config.max_iterations {
        if cur.max_abs <= tol {
            let rule = rule.with_degree(system.degree);
            return report(Outcome::Success, it, cur.max_abs, Some(rule));
        }
        trace.push(cur.norm);
        if stall_index(&trace, config.stall_window, config.stall_factor).is_some() {
            return report(Outcome::Stalled, it, cur.max_abs, None);
        }
        if it == config.max_iterations {
            break;
        }
        let jac = match jacobian(&rule, system) {
            Ok(j) => to_dmatrix(&j),
            Err(_) => return report(Outcome::Stalled, it, cur.max_abs, None),
        };
        let mut accepted = None;
        if config.solver == Solver::GaussNewtonPinv {
            let delta = step::pinv_step(&jac, &cur.res, config.pinv_cut);
            let trial = apply_step(&rule, &delta);
            if let Some(e) = evaluate_residuals(&trial, system) {
                if e.norm < cur.norm {
                    accepted = Some((trial, e));
                }
            }
        }
        if accepted.is_none() {
            let scale = jac.column_iter().map(|c| c.norm_squared()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
            let mut lam = lambda.unwrap_or(1e-3 * scale);
            for _ in 0..12 {
                if let Some(delta) = step::damped_step(&jac, &cur.res, lam) {
                    let trial = apply_step(&rule, &delta);
                    if let Some(e) = evaluate_residuals(&trial, system) {
                        if e.norm < cur.norm {
                            accepted = Some((trial, e));
                            lambda = Some(lam / 3.0);
                            break;
                        }
                    }
                }
                lam *= 4.0;
            }
            if accepted.is_none() {
                lambda = Some(lam);
            }
        }
        match accepted {
            Some((r, e)) => {
                rule = r;
                cur = e;
            }
            None => return report(Outcome::Stalled, it + 1, cur.max_abs, None),
        }
    }
    report(Outcome::MaxIterations, config.max_iterations, cur.max_abs, None)
}

fn system_for(config: &SearchConfig) -> Result<MomentSystem> {
    build_moment_system(config.region, config.n, config.degree, config.extras)
}

/// Seeded restarts until one attempt succeeds or `max_restarts` is used up.
pub fn run_search(config: &SearchConfig) -> Result<SearchReport> {
    config.validate()?;
    let system = system_for(config)?;
    let mut iterations = Vec::new();
    let mut best = f64::INFINITY;
    for restart in 0..config.max_restarts.max(1) {
        let start = initialize(config, restart)?;
        let r = solve(&start, &system, config);
        iterations.extend(&r.iterations);
        best = best.min(r.final_max_residual);
        if r.is_success() {
            return Ok(SearchReport { restarts_used: restart + 1, iterations, ..r });
        }
    }
    Ok(SearchReport {
        outcome: Outcome::MaxRestarts,
        restarts_used: config.max_restarts.max(1),
        iterations,
        final_max_residual: best,
        points: config.points,
        rule: None,
        seed: config.seed,
    })
}

/// Merge the first pair of points closer than `dist`: weight-averaged
/// position, summed weight.
fn merge_closest(rule: &CubatureRule, dist: f64) -> Option<CubatureRule> {
    let count = rule.len();
    let mut best: Option<(f64, usize, usize)> = None;
    for i in 0..count {
        for j in i + 1..count {
            let d: f64 = rule.point(i).iter().zip(rule.point(j)).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            if d < dist && best.is_none_or(|(bd, _, _)| d < bd) {
                best = Some((d, i, j));
            }
        }
    }
    let (_, i, j) = best?;
    let (wi, wj) = (rule.weights[i], rule.weights[j]);
    let w = wi + wj;
    let mut out = rule.retain_points(|k| k != j);
    let merged: Vec<f64> = if w != 0.0 {
        rule.point(i).iter().zip(rule.point(j)).map(|(a, b)| (wi * a + wj * b) / w).collect()
    } else {
        rule.point(i).iter().zip(rule.point(j)).map(|(a, b)| 0.5 * (a + b)).collect()
    };
    out.point_mut(i).copy_from_slice(&merged);
    out.weights[i] = w;
    Some(out)
}

/// Try to shrink a successful rule: drop negligible weights, merge
/// near-coincident points, then restart with one point fewer. Returns the
/// smallest success found (the input if nothing smaller works).
pub fn prune_and_retry(report: &SearchReport, config: &SearchConfig) -> Result<SearchReport> {
    let Some(mut rule) = report.rule.clone().filter(|_| report.is_success()) else {
        return Ok(report.clone());
    };
    let mut best = report.clone();
    let system = system_for(&SearchConfig { region: rule.region, n: rule.n, ..config.clone() })?;
    let v = volume(rule.region, rule.n);
    loop {
        let count = rule.len();
        if count <= 1 {
            return Ok(best);
        }
        let cut = config.prune_weight_rel * v / count as f64;
        let dropped = rule.retain_points(|i| rule.weights[i].abs() >= cut);
        let rms = (rule.rows().map(norm2).sum::<f64>() / count as f64).sqrt();
        let candidate = if dropped.len() < count && !dropped.is_empty() {
            Some(dropped)
        } else {
            merge_closest(&rule, config.merge_distance_rel * rms)
        };
        let next = match candidate {
            Some(start) => {
                let cfg = SearchConfig { points: start.len(), ..config.clone() };
                solve(&start, &system, &cfg)
            }
            None => {
                let cfg = SearchConfig { region: rule.region, n: rule.n, points: count - 1, ..config.clone() };
                run_search(&cfg)?
            }
        };
        match next.rule.clone().filter(|_| next.is_success()) {
            Some(r) => {
                rule = r;
                best = next;
            }
            None => return Ok(best),
        }
    }
}

/// Smallest point count in `[effective_bound(n, d), n_hi]` for which a
/// seeded search succeeds, found by bisection.
pub fn binary_search_n(config: &SearchConfig, n_hi: usize) -> Result<SearchReport> {
    config.validate()?;
    let lower = (effective_bound(config.n as u32, config.degree) as usize).max(1);
    if n_hi < lower {
        return Err(CubatureError::InvalidInput(format!("upper point count {n_hi} is below the lower bound {lower}")));
    }
    let attempt = |count: usize| run_search(&SearchConfig { points: count, ..config.clone() });
    let mut best = attempt(n_hi)?;
    if !best.is_success() {
        return Ok(best);
    }
    let (mut lo, mut hi) = (lower, n_hi);
    while lo < hi {
        let mid = (lo + hi) / 2;
        let r = attempt(mid)?;
        if r.is_success() {
            hi = mid;
            best = r;
        } else {
            lo = mid + 1;
        }
    }
    Ok(best)
}

/// Move a rule to another region: same layout and relative weights,
/// weights normalized to the target volume, points scaled to the target
/// second-moment trace, then solved on the target system at the rule's
/// claimed degree (or `config.degree`).
pub fn transfer_rule(rule: &CubatureRule, target: Region, config: &SearchConfig) -> Result<SearchReport> {
    let cfg = SearchConfig {
        region: target,
        n: rule.n,
        points: rule.len(),
        degree: rule.claimed_degree.unwrap_or(config.degree),
        ..config.clone()
    };
    cfg.validate()?;
    let v = volume(target, rule.n);
    let wsum = rule.weight_sum();
    if wsum == 0.0 {
        return Err(CubatureError::ZeroWeightSum);
    }
    let weights: Vec<f64> = rule.weights.iter().map(|w| w * v / wsum).collect();
    let current: f64 = rule.rows().zip(&weights).map(|(p, w)| w * norm2(p)).sum();
    let s = if current > 0.0 { (second_moment_trace(target, rule.n)? / current).sqrt() } else { 1.0 };
    let points: Vec<f64> = rule.points.iter().map(|x| x * s).collect();
    let start = CubatureRule::from_flat(target, rule.n, points, weights)?.with_provenance(format!("transfer of {}", rule.provenance));
    let system = system_for(&cfg)?;
    Ok(solve(&start, &system, &cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_paper_rule_f64, TableId};
    use crate::rule::verify;
    use proptest::prelude::*;

    #[test]
    fn stall_rule_triggers_at_the_seventh_norm() {
        let trace: Vec<f64> = (0..20).map(|k| 100.0 - k as f64).collect();
        assert_eq!(stall_index(&trace, 7, 0.07), Some(6));
        let halving: Vec<f64> = (0..20).map(|k| 0.5f64.powi(k)).collect();
        assert_eq!(stall_index(&halving, 7, 0.07), None);
        // A decrease just over 7% across the window is not a stall; just under is.
        let mut t = vec![1.0; 6];
        t.push(0.9299999);
        assert_eq!(stall_index(&t, 7, 0.07), None);
        t[6] = 0.9300001;
        assert_eq!(stall_index(&t, 7, 0.07), Some(6));
    }

    #[test]
    fn initialization_normalizes_and_is_deterministic() {
        for region in [Region::ExpR2, Region::ExpR, Region::Ball] {
            let cfg = SearchConfig::new(region, 3, 4, 12).with_seed(42);
            let r = initialize(&cfg, 3).unwrap();
            let v = volume(region, 3);
            assert!((r.weight_sum() - v).abs() <= 1e-15 * v * 4.0);
            let trace: f64 = r.rows().zip(&r.weights).map(|(p, w)| w * norm2(p)).sum();
            let want = second_moment_trace(region, 3).unwrap();
            assert!((trace - want).abs() < 1e-13 * want);
            assert_eq!(r, initialize(&cfg, 3).unwrap());
            assert_ne!(r, initialize(&cfg, 4).unwrap());
        }
        // ExpR2 trace equals n Γ(3/2) Γ(1/2)^(n−1).
        let n = 4;
        let want = n as f64 * 0.5 * std::f64::consts::PI.powf(n as f64 / 2.0);
        assert!((second_moment_trace(Region::ExpR2, n).unwrap() - want).abs() < 1e-13 * want);
    }

    #[test]
    fn jacobian_special_entries() {
        let sys = build_moment_system(Region::ExpR2, 2, 2, 0).unwrap();
        let rule = CubatureRule::from_flat(Region::ExpR2, 2, vec![0.0, 0.0, 1.0, 2.0], vec![1.0, 2.0]).unwrap();
        let j = jacobian(&rule, &sys).unwrap();
        // Weight columns of the zeroth constraint are ones.
        assert_eq!(*j.get(0, 4), 1.0);
        assert_eq!(*j.get(0, 5), 1.0);
        // d(x₁²)/dx₁ at the origin is zero.
        let x2 = sys.constraints.iter().position(|c| c.alpha.0 == [2, 0]).unwrap();
        assert_eq!(*j.get(x2, 0), 0.0);
        assert_eq!(*j.get(x2, 2), 2.0 * 2.0 * 1.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn jacobian_matches_central_differences(seed in any::<u64>(), n in 1usize..=3, d in 0u32..=5, count in 1usize..=10) {
            let cfg = SearchConfig::new(Region::ExpR2, n, d, count).with_seed(seed);
            let rule = initialize(&cfg, 0).unwrap();
            let sys = build_moment_system(Region::ExpR2, n, d, 0).unwrap();
            let jac = jacobian(&rule, &sys).unwrap();
            let h = 1e-7;
            for col in 0..(n + 1) * count {
                let mut e = DVector::zeros((n + 1) * count);
                e[col] = h;
                let plus = residuals(&apply_step(&rule, &e), &sys).unwrap();
                let minus = residuals(&apply_step(&rule, &(-e)), &sys).unwrap();
                for row in 0..sys.len() {
                    let fd = (plus[row] - minus[row]) / (2.0 * h);
                    let an = *jac.get(row, col);
                    let scale = an.abs().max(1.0);
                    prop_assert!((fd - an).abs() <= 1e-6 * scale, "row {row} col {col}: {fd} vs {an}");
                }
            }
        }
    }

    #[test]
    fn finds_degree_three_rule_in_the_plane() {
        let cfg = SearchConfig::new(Region::ExpR2, 2, 3, 4).with_seed(1).with_restarts(20);
        let r = run_search(&cfg).unwrap();
        assert!(r.is_success(), "{r:?}");
        let rule = r.rule.unwrap();
        assert!(verify(&rule, 3, 1e-11).pass);
        assert_eq!(run_search(&cfg).unwrap().iterations, r.iterations);
    }

    #[test]
    fn exact_start_needs_no_iterations() {
        let rule = build_paper_rule_f64(TableId::T5_22_4, Region::ExpR2).unwrap();
        let cfg = SearchConfig::new(Region::ExpR2, 5, 4, 22);
        let sys = build_moment_system(Region::ExpR2, 5, 4, 0).unwrap();
        let r = solve(&rule, &sys, &cfg);
        assert!(r.is_success());
        assert!(r.iterations[0] <= 2);
        let out = r.rule.unwrap();
        let drift = out.points.iter().zip(&rule.points).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(drift <= 1e-10);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        assert!(SearchConfig::new(Region::ExpR2, 2, 3, 0).validate().is_err());
        assert!(SearchConfig::new(Region::GaussianProb, 2, 3, 4).validate().is_err());
        assert!(run_search(&SearchConfig::new(Region::ExpR2, 0, 3, 4)).is_err());
    }

    #[test]
    fn pruning_drops_negligible_weight() {
        let exact = build_paper_rule_f64(TableId::T5_22_4, Region::ExpR2).unwrap();
        let mut rows: Vec<Vec<f64>> = exact.rows().map(<[f64]>::to_vec).collect();
        let mut weights = exact.weights.clone();
        rows.push(vec![0.3, 0.1, -0.2, 0.4, 0.5]);
        weights.push(1e-12);
        let padded = CubatureRule::new(Region::ExpR2, 5, rows, weights).unwrap();
        let cfg = SearchConfig::new(Region::ExpR2, 5, 4, 23).with_restarts(1);
        let start = SearchReport {
            outcome: Outcome::Success,
            restarts_used: 1,
            iterations: vec![0],
            final_max_residual: 0.0,
            points: 23,
            rule: Some(padded),
            seed: 0,
        };
        let out = prune_and_retry(&start, &SearchConfig { max_iterations: 30, ..cfg }).unwrap();
        assert!(out.is_success());
        assert!(out.rule.unwrap().len() <= 22);
    }

    #[test]
    fn pruning_merges_coincident_points() {
        let exact = build_paper_rule_f64(TableId::T4_23_5, Region::ExpR2).unwrap();
        let mut rows: Vec<Vec<f64>> = exact.rows().map(<[f64]>::to_vec).collect();
        let mut weights = exact.weights.clone();
        // Split the central point into two coincident halves.
        let w0 = weights[0];
        weights[0] = w0 / 2.0;
        rows.push(rows[0].clone());
        weights.push(w0 / 2.0);
        let doubled = CubatureRule::new(Region::ExpR2, 4, rows, weights).unwrap();
        let cfg = SearchConfig::new(Region::ExpR2, 4, 5, 24).with_restarts(1);
        let start = SearchReport {
            outcome: Outcome::Success,
            restarts_used: 1,
            iterations: vec![0],
            final_max_residual: 0.0,
            points: 24,
            rule: Some(doubled),
            seed: 0,
        };
        let out = prune_and_retry(&start, &SearchConfig { max_iterations: 30, ..cfg }).unwrap();
        assert!(out.rule.unwrap().len() <= 23);
    }

    #[test]
    fn failed_report_is_returned_unchanged() {
        let cfg = SearchConfig::new(Region::ExpR2, 2, 3, 4);
        let failed = SearchReport {
            outcome: Outcome::Stalled,
            restarts_used: 1,
            iterations: vec![5],
            final_max_residual: 1.0,
            points: 4,
            rule: None,
            seed: 0,
        };
        assert_eq!(prune_and_retry(&failed, &cfg).unwrap(), failed);
    }

    #[test]
    fn transfer_to_same_region_is_immediate() {
        let rule = build_paper_rule_f64(TableId::T4_23_5, Region::ExpR2).unwrap();
        let r = transfer_rule(&rule, Region::ExpR2, &SearchConfig::new(Region::ExpR2, 4, 5, 23)).unwrap();
        assert!(r.is_success());
        assert_eq!(r.iterations, vec![0]);
    }
}
