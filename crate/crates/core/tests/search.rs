use spherical_cubature::catalog::{build_paper_rule_f64, TableId};
use spherical_cubature::rule::verify;
use spherical_cubature::search::{binary_search_n, transfer_rule, SearchConfig};
use spherical_cubature::moments::effective_bound;
use spherical_cubature::Region;

/// Sorted (radius, weight) pairs, which are invariant under rotation and
/// point reordering.
fn signature(rule: &spherical_cubature::rule::CubatureRule) -> Vec<(f64, f64)> {
    let mut v: Vec<(f64, f64)> = rule.radii().into_iter().zip(rule.weights.iter().copied()).collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    v
}

#[test]
fn bisection_finds_small_degree_three_rule() {
    let cfg = SearchConfig::new(Region::ExpR2, 2, 3, 8).with_seed(3).with_restarts(20);
    let r = binary_search_n(&cfg, 8).unwrap();
    assert!(r.is_success());
    let rule = r.rule.unwrap();
    assert!(rule.len() <= 6, "found {} points", rule.len());
    assert!(verify(&rule, 3, 1e-11).pass);
}

#[test]
fn bisection_finds_seven_point_disk_rule() {
    let cfg = SearchConfig::new(Region::Ball, 2, 5, 9).with_seed(7).with_restarts(40);
    let r = binary_search_n(&cfg, 9).unwrap();
    assert!(r.is_success());
    assert_eq!(r.rule.as_ref().unwrap().len(), 7);
}

#[test]
fn bisection_at_the_lower_bound_is_one_attempt() {
    let lower = effective_bound(2, 3) as usize;
    let cfg = SearchConfig::new(Region::ExpR2, 2, 3, lower).with_seed(1).with_restarts(20);
    let r = binary_search_n(&cfg, lower).unwrap();
    assert_eq!(r.points, lower);
    assert!(binary_search_n(&cfg, lower - 1).is_err());
}

#[test]
fn transfer_reproduces_published_ball_rule() {
    for table in [TableId::T5_22_4] {
        let src = build_paper_rule_f64(table, Region::ExpR2).unwrap();
        let want = build_paper_rule_f64(table, Region::Ball).unwrap();
        let cfg = SearchConfig::new(Region::Ball, src.n, table.degree(), src.len());
        let r = transfer_rule(&src, Region::Ball, &cfg).unwrap();
        assert!(r.is_success(), "{table}: {r:?}");
        let got = r.rule.unwrap();
        for ((ra, wa), (rb, wb)) in signature(&got).iter().zip(signature(&want)) {
            assert!((ra - rb).abs() < 1e-10 && (wa - wb).abs() < 1e-10, "{table}: ({ra},{wa}) vs ({rb},{wb})");
        }
    }
}
