//! Integrate cos(x₁ + x₂ + x₃ + x₄) over the unit 4-ball with each built-in
//! 4-dimensional ball rule and compare with the reference value.
//!
//! ```text
//! cargo run --example worked_integral
//! ```

use spherical_cubature::catalog;
use spherical_cubature::rule::evaluate;
use spherical_cubature::Region;

const REFERENCE: f64 = 3.4823322817;

fn main() -> spherical_cubature::Result<()> {
    println!("{:<10} {:>3} {:>3} {:>14} {:>14}", "rule", "N", "d", "estimate", "error");
    let mut rules: Vec<_> = catalog::entries().into_iter().filter(|e| e.n == 4 && e.region == Region::Ball).collect();
    rules.sort_by_key(|e| e.points);
    for e in rules {
        let rule = e.build()?;
        let j = evaluate(&rule, |x| x.iter().sum::<f64>().cos());
        println!("{:<10} {:>3} {:>3} {:>14.10} {:>14.10}", e.id, e.points, e.degree, j, j - REFERENCE);
    }
    Ok(())
}
