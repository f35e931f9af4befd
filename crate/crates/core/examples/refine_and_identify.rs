//! Polish a double-precision rule to hundreds of digits, then recognise its
//! coordinates as closed forms.
//!
//! ```text
//! cargo run --release --example refine_and_identify
//! ```

use spherical_cubature::catalog::{build_paper_rule_f64, eval_expr, TableId};
use spherical_cubature::refine::{identify_surd, refine_rule, verify_extended, SurdBounds};
use spherical_cubature::{BigReal, Precision, Real, Region};

fn main() -> spherical_cubature::Result<()> {
    let rule = build_paper_rule_f64(TableId::T2_10_6, Region::ExpR2)?;
    let refined = refine_rule(&rule, 6, 202)?;
    println!(
        "2_10_6: {} iterations at {} digits, max residual {}, 32-digit values stable: {}",
        refined.iterations,
        refined.working_digits,
        refined.max_residual.to_sci_string(3),
        refined.stable_32
    );
    println!("first weight: {}", refined.rule.weights[0].to_sci_string(60));

    // The 5_22_4 rule is exact in closed form; at 64 digits its residual
    // sits at the rounding level.
    let exact = spherical_cubature::catalog::lookup("e2r2-5-22-4")?.build_in::<BigReal>(&Precision::from_digits(64))?;
    println!("e2r2-5-22-4 at 64 digits: max residual {}", verify_extended(&exact, 4)?.to_sci_string(3));

    let p = Precision::from_digits(60);
    for src in ["sqrt(1/2)", "(sqrt(7)+1)/2", "(4*sqrt(3)-2*sqrt(2))/5", "sqrt(3-sqrt(3))", "22/7", "pi"] {
        let x: BigReal = eval_expr(&p, src)?;
        match identify_surd(&x, SurdBounds::default()) {
            Some(c) => println!("{src:>24} → {} ({} digits agree)", c.form, c.confidence),
            None => println!("{src:>24} → no closed form within bounds"),
        }
    }
    Ok(())
}
