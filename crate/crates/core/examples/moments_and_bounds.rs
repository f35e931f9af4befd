//! Exact moments, moment-system sizes and lower bounds on the point count.
//!
//! ```text
//! cargo run --example moments_and_bounds
//! ```

use spherical_cubature::moments::{build_moment_system, effective_bound, exact_moment, exact_volume, moller_bound, stroud_bound};
use spherical_cubature::{MultiIndex, Region};

fn main() -> spherical_cubature::Result<()> {
    // Every moment is a rational multiple of a half-integer power of π.
    for region in [Region::ExpR2, Region::ExpR, Region::Ball] {
        let m = exact_moment(region, 3, &MultiIndex(vec![2, 2, 0]))?;
        println!("{region:<6} V = {:<14} ∫x²y² = {:<14} ≈ {:.12}", exact_volume(region, 3).to_string(), m.to_string(), m.to_f64());
    }

    let system = build_moment_system(Region::Ball, 2, 4, 0)?;
    println!("\nball, n=2, d=4: {} constraints", system.len());
    for c in system.constraints.iter().take(6) {
        println!("  {:?} → {:.6}", c.alpha.exponents(), c.target);
    }

    println!("\n n  d  stroud  moller  effective");
    for (n, d) in [(2, 7), (3, 6), (4, 9), (6, 7), (7, 4)] {
        let moller = moller_bound(n, d).map_or_else(|_| "-".to_string(), |b| b.to_string());
        println!("{n:>2} {d:>2} {:>7} {moller:>7} {:>10}", stroud_bound(n, d), effective_bound(n, d));
    }
    Ok(())
}
