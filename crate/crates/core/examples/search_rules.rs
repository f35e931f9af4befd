//! Find new rules by direct search: a fixed point count, bisection down to
//! the smallest count that works, and moving a rule to another region.
//!
//! ```text
//! cargo run --release --example search_rules
//! ```

use spherical_cubature::catalog::{build_paper_rule_f64, TableId};
use spherical_cubature::moments::effective_bound;
use spherical_cubature::rule::verify;
use spherical_cubature::search::{binary_search_n, run_search, transfer_rule, SearchConfig};
use spherical_cubature::Region;

fn main() -> spherical_cubature::Result<()> {
    let cfg = SearchConfig::new(Region::ExpR2, 2, 5, 8).with_seed(1);
    let report = run_search(&cfg)?;
    println!(
        "e^(-x·x), n=2, d=5, N=8: {:?} after {} attempt(s), iterations {:?}",
        report.outcome, report.restarts_used, report.iterations
    );

    let lower = effective_bound(2, 5) as usize;
    let cfg = SearchConfig::new(Region::Ball, 2, 5, lower + 3).with_seed(7).with_restarts(40);
    let smallest = binary_search_n(&cfg, lower + 3)?;
    let rule = smallest.rule.expect("bisection returns a rule");
    println!(
        "disk, d=5: smallest N found {} (lower bound {lower}), max residual {:.2e}",
        rule.len(),
        verify(&rule, 5, 1e-11).max_abs_residual
    );
    for (p, w) in rule.rows().zip(&rule.weights) {
        println!("  {:>10.6} {:>10.6}   {:.8}", p[0], p[1], w);
    }

    // Same layout, new weight function: the solver only has to adjust.
    let src = build_paper_rule_f64(TableId::T5_22_4, Region::ExpR2)?;
    let cfg = SearchConfig::new(Region::Ball, 5, 4, src.len());
    let moved = transfer_rule(&src, Region::Ball, &cfg)?;
    println!("\n5_22_4 moved to the ball: {:?} in {:?} iterations", moved.outcome, moved.iterations);
    Ok(())
}
