use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spherical_cubature::catalog::{build_paper_rule_f64, TableId};
use spherical_cubature::moments::build_moment_system;
use spherical_cubature::rule::{verify, CubatureRule};
use spherical_cubature::search::{solve, SearchConfig};
use spherical_cubature::symmetry::{default_shell_tolerances, detect_shells, project_to_shell, symmetrize_bilateral};
use spherical_cubature::Region;

fn perturb(rule: &CubatureRule, size: f64, seed: u64) -> CubatureRule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = rule.clone();
    for x in out.points.iter_mut() {
        *x += size * rng.random_range(-1.0..1.0);
    }
    for w in out.weights.iter_mut() {
        *w *= 1.0 + size * rng.random_range(-1.0..1.0);
    }
    out
}

#[test]
fn symmetrize_then_solve_recovers_the_degree_six_rule() {
    let rule = build_paper_rule_f64(TableId::T2_10_6, Region::ExpR2).unwrap();
    let noisy = perturb(&rule, 1e-4, 11);
    assert!(!verify(&noisy, 6, 1e-9).pass);
    let (seed, _) = symmetrize_bilateral(&noisy, None).unwrap();
    let sys = build_moment_system(Region::ExpR2, 2, 6, 0).unwrap();
    let report = solve(&seed, &sys, &SearchConfig::new(Region::ExpR2, 2, 6, rule.len()));
    assert!(report.is_success(), "{report:?}");
    let fixed = report.rule.unwrap();
    assert!(verify(&fixed, 6, 1e-11).pass);
    let mut radii = fixed.radii();
    let mut want = rule.radii();
    radii.sort_by(f64::total_cmp);
    want.sort_by(f64::total_cmp);
    for (a, b) in radii.iter().zip(&want) {
        assert!((a - b).abs() < 1e-6, "{radii:?} vs {want:?}");
    }
}

#[test]
fn project_then_solve_recovers_a_two_shell_rule() {
    let rule = build_paper_rule_f64(TableId::T6_28_4, Region::ExpR2).unwrap();
    let noisy = perturb(&rule, 1e-3, 4);
    let (_, wt) = default_shell_tolerances(&noisy);
    // Noise of 1e-3 per coordinate spreads the outer radius by a few 1e-3.
    let shells = detect_shells(&noisy, 1e-2, wt);
    let outer: Vec<usize> = shells.shells.last().unwrap().members.clone();
    assert_eq!(outer.len(), 27);
    let seed = project_to_shell(&noisy, &outer, None, 1.0).unwrap();
    let r = seed.radius(outer[0]);
    assert!(outer.iter().all(|&i| (seed.radius(i) - r).abs() < 1e-12 * r));
    let sys = build_moment_system(Region::ExpR2, 6, 4, 0).unwrap();
    let report = solve(&seed, &sys, &SearchConfig::new(Region::ExpR2, 6, 4, rule.len()));
    assert!(report.is_success(), "{report:?}");
    assert!(verify(report.rule.as_ref().unwrap(), 4, 1e-11).pass);
}
