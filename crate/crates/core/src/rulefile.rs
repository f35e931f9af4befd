//! Plain-text rule listings.
//!
//! ```text
//! # free-form comment lines
//! er2 2 4 3
//! 0.70710678118654757 0.70710678118654757 0.78539816339744828
//! ...
//! ```
//!
//! After any `#` lines comes one header line `region n N degree` (degree
//! `?` when unknown), then `N` lines of `n` coordinates followed by the
//! weight, separated by spaces. Blank lines are ignored.

use std::path::Path;

use crate::error::{CubatureError, Result};
use crate::moments::Region;
use crate::real::Real;
use crate::rule::CubatureRule;

/// Significant digits that make a double round-trip exactly.
pub const F64_DIGITS: usize = 17;
/// Digits of the published double-precision listings.
pub const LISTING_DIGITS: usize = 15;
/// Digits of extended-precision listings.
pub const EXTENDED_DIGITS: usize = 32;

/// Render `rule` with `digits` significant digits per value. The rule's
/// provenance becomes the comment block.
pub fn format_rule<T: Real>(rule: &CubatureRule<T>, digits: usize) -> String {
    let mut out = String::new();
    for line in rule.provenance.lines().filter(|l| !l.trim().is_empty()) {
        out.push_str("# ");
        out.push_str(line.trim());
        out.push('\n');
    }
    let degree = rule.claimed_degree.map_or_else(|| "?".to_string(), |d| d.to_string());
    out.push_str(&format!("{} {} {} {}\n", rule.region.tag(), rule.n, rule.len(), degree));
    for (i, w) in rule.weights.iter().enumerate() {
        let fields: Vec<String> = rule.point(i).iter().chain(std::iter::once(w)).map(|v| v.to_sci_string(digits)).collect();
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    out
}

/// Parse a listing, converting every value exactly from its decimal text
/// to the precision of `ctx`.
pub fn parse_rule_in<T: Real>(ctx: &T::Ctx, text: &str) -> Result<CubatureRule<T>> {
    let err = |line: usize, msg: String| CubatureError::Parse { line, msg };
    let mut comments = Vec::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (header_line, header) = loop {
        match lines.next() {
            Some((_, l)) if l.starts_with('#') => comments.push(l.trim_start_matches('#').trim().to_string()),
            Some(h) => break h,
            None => return Err(err(0, "missing header line".into())),
        }
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(err(header_line, format!("header needs `region n N degree`, got `{header}`")));
    }
    let region: Region = fields[0].parse().map_err(|e: CubatureError| err(header_line, e.to_string()))?;
    let n: usize = fields[1].parse().map_err(|_| err(header_line, format!("bad dimension `{}`", fields[1])))?;
    let count: usize = fields[2].parse().map_err(|_| err(header_line, format!("bad point count `{}`", fields[2])))?;
    let degree = match fields[3] {
        "?" => None,
        d => Some(d.parse::<u32>().map_err(|_| err(header_line, format!("bad degree `{d}`")))?),
    };
    if n == 0 || count == 0 {
        return Err(err(header_line, "dimension and point count must be positive".into()));
    }
    let mut points = Vec::with_capacity(n * count);
    let mut weights = Vec::with_capacity(count);
    for (line, body) in lines.by_ref() {
        if body.starts_with('#') {
            continue;
        }
        if weights.len() == count {
            return Err(err(line, format!("more than the {count} points announced")));
        }
        let vals: Vec<&str> = body.split_whitespace().collect();
        if vals.len() != n + 1 {
            return Err(err(line, format!("expected {} fields, found {}", n + 1, vals.len())));
        }
        for (k, v) in vals.iter().enumerate() {
            let x = T::parse_decimal(ctx, v).ok_or_else(|| err(line, format!("`{v}` is not a finite decimal")))?;
            if k < n {
                points.push(x);
            } else {
                weights.push(x);
            }
        }
    }
    if weights.len() != count {
        return Err(err(0, format!("file ends after {} of {count} points", weights.len())));
    }
    let mut rule = CubatureRule::from_flat(region, n, points, weights)?.with_provenance(comments.join("\n"));
    rule.claimed_degree = degree;
    Ok(rule)
}

pub fn parse_rule(text: &str) -> Result<CubatureRule<f64>> {
    parse_rule_in::<f64>(&(), text)
}

pub fn read_rule_in<T: Real>(ctx: &T::Ctx, path: impl AsRef<Path>) -> Result<CubatureRule<T>> {
    parse_rule_in(ctx, &std::fs::read_to_string(path)?)
}

pub fn read_rule(path: impl AsRef<Path>) -> Result<CubatureRule<f64>> {
    read_rule_in::<f64>(&(), path)
}

pub fn write_rule<T: Real>(rule: &CubatureRule<T>, digits: usize, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_rule(rule, digits))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::{BigReal, Precision};
    use crate::catalog::{build_paper_rule, build_paper_rule_f64, TableId};
    use proptest::prelude::*;

    #[test]
    fn layout_of_a_small_rule() {
        let rule = CubatureRule::from_flat(Region::ExpR2, 1, vec![-0.5, 0.5], vec![1.0, 0.25]).unwrap().with_degree(1).with_provenance("two points");
        assert_eq!(format_rule(&rule, 3), "# two points\ner2 1 2 1\n-5.00e-1 1.00e0\n5.00e-1 2.50e-1\n");
        let back = parse_rule(&format_rule(&rule, F64_DIGITS)).unwrap();
        assert_eq!(back, rule);
    }

    proptest! {
        #[test]
        fn doubles_round_trip_exactly(vals in proptest::collection::vec(-1e300f64..1e300, 6)) {
            let rule = CubatureRule::from_flat(Region::Ball, 2, vals[..4].to_vec(), vals[4..].to_vec()).unwrap();
            let back = parse_rule(&format_rule(&rule, F64_DIGITS)).unwrap();
            prop_assert_eq!(back.points, rule.points);
            prop_assert_eq!(back.weights, rule.weights);
        }
    }

    #[test]
    fn extended_values_round_trip_at_their_digit_count() {
        let prec = Precision::from_digits(64);
        let rule = build_paper_rule::<BigReal>(&prec, TableId::T3_10_4, Region::ExpR2).unwrap();
        let text = format_rule(&rule, EXTENDED_DIGITS);
        let back: CubatureRule<BigReal> = parse_rule_in(&prec, &text).unwrap();
        assert_eq!(format_rule(&back, EXTENDED_DIGITS), text);
    }

    #[test]
    fn fifteen_digit_listing_still_verifies() {
        let rule = build_paper_rule_f64(TableId::T4_23_5, Region::Ball).unwrap();
        let back = parse_rule(&format_rule(&rule, LISTING_DIGITS)).unwrap();
        assert!(crate::rule::verify(&back, 5, 1e-13).pass);
        assert_eq!(back.claimed_degree, Some(5));
    }

    #[test]
    fn malformed_listings_are_rejected() {
        let bad = [
            "",
            "# only a comment\n",
            "er2 2 2 3\n1 2 3\n",
            "er2 2 1 3\n1 2\n",
            "er2 2 1 3\n1 2 x\n",
            "er2 2 1 3\n1 2 inf\n",
            "moon 2 1 3\n1 2 3\n",
            "er2 2 1\n1 2 3\n",
            "er2 2 1 3\n1 2 3\n4 5 6\n",
        ];
        for text in bad {
            assert!(matches!(parse_rule(text), Err(CubatureError::Parse { .. })), "{text:?}");
        }
    }
}
