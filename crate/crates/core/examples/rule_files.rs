//! Write, read and convert plain-text rule listings.
//!
//! ```text
//! cargo run --example rule_files
//! ```

use spherical_cubature::catalog;
use spherical_cubature::rule::{convert_from_gaussian, convert_gaussian, verify};
use spherical_cubature::rulefile::{format_rule, parse_rule, read_rule, write_rule, F64_DIGITS, LISTING_DIGITS};

fn main() -> spherical_cubature::Result<()> {
    let rule = catalog::lookup("e2r2-3-10-4")?.build()?;
    let text = format_rule(&rule, LISTING_DIGITS);
    print!("{text}");

    // The same rule for the standard normal density.
    let gaussian = convert_from_gaussian(&rule)?;
    let path = std::env::temp_dir().join("g3-10-4.txt");
    write_rule(&gaussian, F64_DIGITS, &path)?;
    let back = convert_gaussian(&read_rule(&path)?)?;
    let gap = back.points.iter().zip(&rule.points).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("\nwrote {}; round trip through the Gaussian form moves coordinates by {gap:.1e}", path.display());

    // A 15-digit listing still verifies at its degree.
    let reread = parse_rule(&text)?;
    println!("15-digit listing verifies at degree 4: {}", verify(&reread, 4, 1e-11).pass);
    std::fs::remove_file(&path)?;
    Ok(())
}
