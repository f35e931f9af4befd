//! Browse the built-in rules and check each one against its moments.
//!
//! ```text
//! cargo run --example catalog_rules
//! ```

use spherical_cubature::catalog;
use spherical_cubature::rule::{detected_degree, quality_of, stability_factor, verify, BOUNDARY_TOL};

fn main() -> spherical_cubature::Result<()> {
    println!("{:<14} {:>4} {:>4} {:>3} {:>12} {:>7} {:>9}  shells", "id", "n", "N", "d", "max resid", "quality", "stability");
    for entry in catalog::entries() {
        let rule = entry.build()?;
        let report = verify(&rule, entry.degree, entry.table.verify_tolerance());
        assert!(report.pass, "{} does not integrate its moments", entry.id);
        println!(
            "{:<14} {:>4} {:>4} {:>3} {:>12.3e} {:>7} {:>9.3}  {}",
            entry.id,
            entry.n,
            entry.points,
            entry.degree,
            report.max_abs_residual,
            quality_of(&rule, BOUNDARY_TOL).to_string(),
            stability_factor(&rule)?,
            entry.shells.unwrap_or("-"),
        );
    }

    // Lookups accept several spellings of the same rule.
    let rule = catalog::lookup("e6r2-127-7")?.build()?;
    println!("\n{}: detected degree {}", rule.provenance, detected_degree(&rule, 1e-11, 10));
    Ok(())
}
