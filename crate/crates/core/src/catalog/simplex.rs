//! Degree-2 rules with n+1 equally weighted points at the vertices of a
//! regular simplex.

use std::fmt;
use std::str::FromStr;

use crate::error::{CubatureError, Result};
use crate::moments::{monomial_moment_in, volume_in, MultiIndex, Region};
use crate::real::Real;
use crate::rule::CubatureRule;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexVariant {
    /// The triangular layout `√(n+1)·χ` with one point per row.
    Classical,
    /// Points `(1,…,1)` and the permutations of `(a,b,…,b)` with
    /// `a = (−1+(n−1)√(n+1))/n`, `b = (−1−√(n+1))/n`.
    SimpleA,
    /// As [`SimplexVariant::SimpleA`] with `a = (−1−(n−1)√(n+1))/n`,
    /// `b = (−1+√(n+1))/n`.
    SimpleB,
}

impl fmt::Display for SimplexVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SimplexVariant::Classical => "classical",
            SimplexVariant::SimpleA => "simple-a",
            SimplexVariant::SimpleB => "simple-b",
        })
    }
}

impl FromStr for SimplexVariant {
    type Err = CubatureError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "classical" => Ok(SimplexVariant::Classical),
            "simple-a" | "a" => Ok(SimplexVariant::SimpleA),
            "simple-b" | "b" => Ok(SimplexVariant::SimpleB),
            other => Err(CubatureError::InvalidInput(format!("unknown simplex variant `{other}`"))),
        }
    }
}

/// Unscaled vertices with `Σ x xᵀ = (n+1) I` and centroid at the origin.
pub(crate) fn simplex_vertices<T: Real>(ctx: &T::Ctx, n: usize, variant: SimplexVariant) -> Vec<Vec<T>> {
    let ni = n as i64;
    let root = T::from_i64(ctx, ni + 1).sqrt();
    match variant {
        SimplexVariant::Classical => (0..=n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        // Column j (0-based) holds √(1/((j+1)(j+2))) down to row j,
                        // then −√((j+1)/(j+2)) in row j+1, then zeros.
                        let (j1, j2) = (j as i64 + 1, j as i64 + 2);
                        let v = if i <= j {
                            T::ratio(ctx, 1, j1 * j2).sqrt()
                        } else if i == j + 1 {
                            -T::ratio(ctx, j1, j2).sqrt()
                        } else {
                            T::zero(ctx)
                        };
                        v * &root
                    })
                    .collect()
            })
            .collect(),
        SimplexVariant::SimpleA | SimplexVariant::SimpleB => {
            let s = if variant == SimplexVariant::SimpleA { T::one(ctx) } else { -T::one(ctx) };
            let nn = T::from_i64(ctx, ni);
            let a = (-T::one(ctx) + s.clone() * T::from_i64(ctx, ni - 1) * &root) / &nn;
            let b = (-T::one(ctx) - s * &root) / &nn;
            let mut rows = vec![vec![T::one(ctx); n]];
            for i in 0..n {
                let mut r = vec![b.clone(); n];
                r[i] = a.clone();
                rows.push(r);
            }
            rows
        }
    }
}

/// Degree-2 simplex rule for `region`: equal weights `V/(n+1)` and the
/// vertices scaled so every second moment is matched.
pub fn simplex_rule_in<T: Real>(ctx: &T::Ctx, region: Region, n: usize, variant: SimplexVariant) -> Result<CubatureRule<T>> {
    if n == 0 {
        return Err(CubatureError::InvalidInput("simplex rule needs n ≥ 1".into()));
    }
    let v = volume_in::<T>(ctx, region, n);
    let m2 = match region {
        Region::GaussianProb => T::one(ctx),
        _ => monomial_moment_in::<T>(ctx, region, n, &MultiIndex::axis(n, 0, 2))?,
    };
    let scale = (m2 / &v).sqrt();
    let w = v / T::from_i64(ctx, n as i64 + 1);
    let rows: Vec<Vec<T>> = simplex_vertices::<T>(ctx, n, variant)
        .into_iter()
        .map(|r| r.into_iter().map(|x| (x * &scale).canonical_zero()).collect())
        .collect();
    let weights = vec![w; n + 1];
    Ok(CubatureRule::new(region, n, rows, weights)?.with_degree(2).with_provenance(format!("simplex {variant}")))
}

pub fn simplex_rule(region: Region, n: usize, variant: SimplexVariant) -> Result<CubatureRule<f64>> {
    simplex_rule_in::<f64>(&(), region, n, variant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::build_moment_system;
    use crate::rule::{residuals, verify};

    const VARIANTS: [SimplexVariant; 3] = [SimplexVariant::Classical, SimplexVariant::SimpleA, SimplexVariant::SimpleB];

    #[test]
    fn simple_a_in_three_dimensions_is_the_tetrahedron() {
        let rows = simplex_vertices::<f64>(&(), 3, SimplexVariant::SimpleA);
        let want = [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
        for (r, w) in rows.iter().zip(want) {
            for (x, y) in r.iter().zip(w) {
                assert!((x - y).abs() < 1e-15);
            }
        }
        let r = simplex_rule(Region::GaussianProb, 3, SimplexVariant::SimpleA).unwrap();
        assert!((r.point(1)[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn exact_to_degree_two_only() {
        for region in [Region::GaussianProb, Region::ExpR2, Region::ExpR, Region::Ball] {
            for n in 1..=6 {
                for v in VARIANTS {
                    let r = simplex_rule(region, n, v).unwrap();
                    assert_eq!(r.len(), n + 1);
                    assert!(verify(&r, 2, 1e-13).pass, "{region} n={n} {v}");
                    // A line has a symmetric two-point rule that is also exact
                    // for odd moments.
                    if n > 1 {
                        assert!(!verify(&r, 3, 1e-9).pass, "{region} n={n} {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn classical_and_simple_share_residuals() {
        let sys = build_moment_system(Region::ExpR2, 4, 2, 0).unwrap();
        let a = residuals(&simplex_rule(Region::ExpR2, 4, SimplexVariant::Classical).unwrap(), &sys).unwrap();
        let b = residuals(&simplex_rule(Region::ExpR2, 4, SimplexVariant::SimpleA).unwrap(), &sys).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-13);
        }
    }
}
