//! Canonical orientation and symmetrization of rules.
//!
//! Every transform here is orthogonal (so moments of the rotationally
//! invariant regions are preserved) except [`project_to_shell`] and
//! [`symmetrize_bilateral`], which produce seeds for a further solve.

use nalgebra::{DMatrix, DVector};

use crate::catalog::SimplexVariant;
use crate::error::{CubatureError, Result};
use crate::rule::CubatureRule;

/// Points sharing one radius.
#[derive(Clone, Debug, PartialEq)]
pub struct Shell {
    pub radius: f64,
    pub members: Vec<usize>,
    /// Whether all member weights agree to the weight tolerance.
    pub equal_weights: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShellDecomposition {
    /// Sorted by increasing radius.
    pub shells: Vec<Shell>,
    pub radius_tol: f64,
}

impl ShellDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.shells.iter().map(|s| s.members.len()).collect()
    }
}

/// Default shell tolerances: `1e-9` times the largest radius and the
/// largest absolute weight.
pub fn default_shell_tolerances(rule: &CubatureRule) -> (f64, f64) {
    let rmax = rule.radii().into_iter().fold(0.0, f64::max);
    let wmax = rule.weights.iter().fold(0.0f64, |m, w| m.max(w.abs()));
    (1e-9 * rmax.max(f64::MIN_POSITIVE), 1e-9 * wmax)
}

/// Group points by radius: sorted radii start a new shell whenever they
/// exceed the first radius of the current shell by more than `radius_tol`.
pub fn detect_shells(rule: &CubatureRule, radius_tol: f64, weight_tol: f64) -> ShellDecomposition {
    let radii = rule.radii();
    let mut order: Vec<usize> = (0..rule.len()).collect();
    order.sort_by(|&a, &b| radii[a].total_cmp(&radii[b]).then(a.cmp(&b)));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match groups.last_mut() {
            Some(g) if radii[i] - radii[g[0]] <= radius_tol => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let shells = groups
        .into_iter()
        .map(|mut members| {
            members.sort_unstable();
            let radius = members.iter().map(|&i| radii[i]).sum::<f64>() / members.len() as f64;
            let w0 = rule.weights[members[0]];
            let equal_weights = members.iter().all(|&i| (rule.weights[i] - w0).abs() <= weight_tol);
            Shell { radius, members, equal_weights }
        })
        .collect();
    ShellDecomposition { shells, radius_tol }
}

/// Apply `x ↦ Q x` to every point.
pub fn rotate(rule: &CubatureRule, q: &DMatrix<f64>) -> CubatureRule {
    let mut out = rule.clone();
    for i in 0..rule.len() {
        let x = DVector::from_column_slice(rule.point(i));
        let y = q * x;
        out.point_mut(i).copy_from_slice(y.as_slice());
    }
    out
}

/// Indices of the non-central points other than `first`, ordered by
/// increasing angle from point `first`; ties go to the lower index.
pub fn angular_order(rule: &CubatureRule, first: usize) -> Result<Vec<usize>> {
    let r0 = rule.radius(first);
    if r0 == 0.0 {
        return Err(CubatureError::PointAtOrigin(first));
    }
    let p0 = rule.point(first);
    let mut others: Vec<(f64, usize)> = (0..rule.len())
        .filter(|&i| i != first)
        .filter_map(|i| {
            let r = rule.radius(i);
            (r > 0.0).then(|| {
                let c: f64 = p0.iter().zip(rule.point(i)).map(|(a, b)| a * b).sum::<f64>() / (r0 * r);
                (-c.clamp(-1.0, 1.0), i)
            })
        })
        .collect();
    others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(others.into_iter().map(|(_, i)| i).collect())
}

/// Rotate so that the chosen points become lower-triangular: the `j`-th
/// chosen point has zeros beyond coordinate `j` and a positive `j`-th
/// coordinate. Uses the QR factorization of the transposed chosen rows.
pub fn align_axes(rule: &CubatureRule, chosen: &[usize]) -> Result<CubatureRule> {
    let n = rule.n;
    if chosen.is_empty() || chosen.len() > n {
        return Err(CubatureError::InvalidInput(format!("choose between 1 and {n} points")));
    }
    if let Some(&bad) = chosen.iter().find(|&&i| i >= rule.len()) {
        return Err(CubatureError::InvalidInput(format!("point index {bad} out of range")));
    }
    // Square n×n matrix whose first k columns are the chosen points.
    let mut at = DMatrix::zeros(n, n);
    for (j, &i) in chosen.iter().enumerate() {
        at.set_column(j, &DVector::from_column_slice(rule.point(i)));
    }
    let qr = at.qr();
    let mut q = qr.q();
    let r = qr.r();
    let scale = (0..chosen.len()).map(|j| r[(j, j)].abs()).fold(0.0, f64::max);
    for j in 0..chosen.len() {
        if r[(j, j)].abs() <= 1e-12 * scale || scale == 0.0 {
            return Err(CubatureError::RankDeficient);
        }
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    let mut out = rotate(rule, &q.transpose());
    // The chosen rows are triangular by construction; clear rounding noise.
    for (j, &i) in chosen.iter().enumerate() {
        for x in &mut out.point_mut(i)[j + 1..] {
            *x = 0.0;
        }
    }
    Ok(out)
}

/// `Q = (I − S)(I + S)⁻¹` for the skew-symmetric `S` whose upper triangle,
/// read row by row, holds `params`.
pub fn cayley_rotation(n: usize, params: &[f64]) -> Result<DMatrix<f64>> {
    if params.len() != n * (n.saturating_sub(1)) / 2 {
        return Err(CubatureError::DimensionMismatch { expected: n * (n.saturating_sub(1)) / 2, got: params.len() });
    }
    let mut s = DMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            s[(i, j)] = params[k];
            s[(j, i)] = -params[k];
            k += 1;
        }
    }
    let id = DMatrix::<f64>::identity(n, n);
    let inv = (&id + &s).try_inverse().ok_or(CubatureError::RankDeficient)?;
    Ok((id - s) * inv)
}

/// Optimal assignment for a square cost matrix: `perm[i]` is the column
/// given to row `i`. Returns the permutation and its total cost.
/// Shortest augmenting paths with dual potentials (Hungarian method).
pub fn linear_assignment(cost: &[Vec<f64>]) -> (Vec<usize>, f64) {
    let n = cost.len();
    if n == 0 {
        return (vec![], 0.0);
    }
    assert!(cost.iter().all(|r| r.len() == n), "cost matrix must be square");
    // 1-based arrays; column 0 is a virtual start.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut perm = vec![0; n];
    for j in 1..=n {
        perm[row_of[j] - 1] = j - 1;
    }
    let total = perm.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
    (perm, total)
}

/// Orthogonal `Q` minimizing `Σ ‖Q sᵢ − tᵢ‖²`.
fn procrustes(src: &[Vec<f64>], dst: &[Vec<f64>]) -> DMatrix<f64> {
    let n = src[0].len();
    let mut m = DMatrix::zeros(n, n);
    for (s, t) in src.iter().zip(dst) {
        m += DVector::from_column_slice(t) * DVector::from_column_slice(s).transpose();
    }
    let svd = m.svd(true, true);
    svd.u.unwrap() * svd.v_t.unwrap()
}

/// Rotate a rule so that the regular-simplex shell `shell` takes the form
/// `(1,…,1)`, `(a,b,…,b)_S` up to scale. The variant whose form the shell
/// already has (up to a permutation of vertices) is kept; otherwise the
/// first variant is used.
pub fn orient_simplex(rule: &CubatureRule, shell: &[usize]) -> Result<CubatureRule> {
    let n = rule.n;
    if shell.len() != n + 1 {
        return Err(CubatureError::NotRegularSimplex(format!("{} points for dimension {n}", shell.len())));
    }
    let pts: Vec<Vec<f64>> = shell.iter().map(|&i| rule.point(i).to_vec()).collect();
    let radius = shell.iter().map(|&i| rule.radius(i)).sum::<f64>() / shell.len() as f64;
    let tol = 1e-8 * radius.max(f64::MIN_POSITIVE);
    if radius == 0.0 || shell.iter().any(|&i| (rule.radius(i) - radius).abs() > tol) {
        return Err(CubatureError::NotRegularSimplex("points are not on one sphere".into()));
    }
    let edge = radius * (2.0 * (n as f64 + 1.0) / n as f64).sqrt();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            let d = dist(&pts[a], &pts[b]);
            if (d - edge).abs() > 1e-8 * edge {
                return Err(CubatureError::NotRegularSimplex(format!("edge {a}-{b} has length {d}, expected {edge}")));
            }
        }
    }
    let target = |variant| -> Vec<Vec<f64>> {
        let s = radius / (n as f64).sqrt();
        crate::catalog::simplex::simplex_vertices::<f64>(&(), n, variant)
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * s).collect())
            .collect()
    };
    let fit = |tgt: &[Vec<f64>]| -> DMatrix<f64> {
        let cost: Vec<Vec<f64>> = pts.iter().map(|p| tgt.iter().map(|t| dist(p, t).powi(2)).collect()).collect();
        let (perm, _) = linear_assignment(&cost);
        let mut dst: Vec<Vec<f64>> = perm.iter().map(|&j| tgt[j].clone()).collect();
        let mut q = procrustes(&pts, &dst);
        if q.determinant() < 0.0 && n >= 2 {
            // Exchanging two non-apex targets flips the orientation.
            let movable: Vec<usize> = (0..=n).filter(|&i| perm[i] != 0).take(2).collect();
            dst.swap(movable[0], movable[1]);
            q = procrustes(&pts, &dst);
        }
        q
    };
    let qb = fit(&target(SimplexVariant::SimpleB));
    let q = if (&qb - DMatrix::identity(n, n)).amax() < 1e-8 { qb } else { fit(&target(SimplexVariant::SimpleA)) };
    Ok(rotate(rule, &q))
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Move the selected points radially toward one radius and give them their
/// mean weight. `target` defaults to the |weight|-weighted mean radius of
/// the selection; `blend` = 1 moves all the way.
pub fn project_to_shell(rule: &CubatureRule, indices: &[usize], target: Option<f64>, blend: f64) -> Result<CubatureRule> {
    if indices.is_empty() {
        return Err(CubatureError::InvalidInput("no points selected".into()));
    }
    if let Some(&i) = indices.iter().find(|&&i| rule.radius(i) == 0.0) {
        return Err(CubatureError::PointAtOrigin(i));
    }
    let radii: Vec<f64> = indices.iter().map(|&i| rule.radius(i)).collect();
    let ws: Vec<f64> = indices.iter().map(|&i| rule.weights[i]).collect();
    let wabs: f64 = ws.iter().map(|w| w.abs()).sum();
    let target = target.unwrap_or_else(|| {
        if wabs > 0.0 {
            radii.iter().zip(&ws).map(|(r, w)| r * w.abs()).sum::<f64>() / wabs
        } else {
            radii.iter().sum::<f64>() / radii.len() as f64
        }
    });
    let mean_w = ws.iter().sum::<f64>() / ws.len() as f64;
    let mut out = rule.clone();
    for (&i, &r) in indices.iter().zip(&radii) {
        let new_r = r + blend * (target - r);
        for x in out.point_mut(i) {
            *x *= new_r / r;
        }
        out.weights[i] = mean_w;
    }
    Ok(out)
}

/// Rotation taking the principal axes of the (unweighted, centered) point
/// covariance to the coordinate axes, matching each eigenvector to the axis
/// it is already closest to.
fn principal_alignment(rule: &CubatureRule) -> DMatrix<f64> {
    let n = rule.n;
    let count = rule.len() as f64;
    let mut mean = DVector::zeros(n);
    for p in rule.rows() {
        mean += DVector::from_column_slice(p);
    }
    mean /= count;
    let mut cov = DMatrix::zeros(n, n);
    for p in rule.rows() {
        let d = DVector::from_column_slice(p) - &mean;
        cov += &d * d.transpose();
    }
    let eig = cov.symmetric_eigen();
    let vecs = eig.eigenvectors;
    let cost: Vec<Vec<f64>> = (0..n).map(|axis| (0..n).map(|k| -vecs[(axis, k)].abs()).collect()).collect();
    let (perm, _) = linear_assignment(&cost);
    // Row `axis` of Q is the eigenvector assigned to that axis.
    let mut q = DMatrix::zeros(n, n);
    for (axis, &k) in perm.iter().enumerate() {
        let sign = if vecs[(axis, k)] < 0.0 { -1.0 } else { 1.0 };
        for m in 0..n {
            q[(axis, m)] = sign * vecs[(m, k)];
        }
    }
    if (&q - DMatrix::identity(n, n)).amax() < 1e-12 {
        DMatrix::identity(n, n)
    } else {
        q
    }
}

fn reflection_assignment(rule: &CubatureRule, axis: usize) -> (Vec<usize>, f64) {
    let cost: Vec<Vec<f64>> = (0..rule.len())
        .map(|i| {
            let p = rule.point(i);
            (0..rule.len())
                .map(|j| {
                    let q = rule.point(j);
                    (0..rule.n).map(|k| {
                        let r = if k == axis { -q[k] } else { q[k] };
                        (p[k] - r) * (p[k] - r)
                    }).sum()
                })
                .collect()
        })
        .collect();
    linear_assignment(&cost)
}

/// Make a rule exactly symmetric under reflection of one coordinate.
///
/// Principal axes are aligned first; `axis` defaults to the coordinate whose
/// reflection has the cheapest point matching. Matched pairs become exact
/// mirror pairs with their mean weight; points matched to themselves land
/// on the mirror plane.
pub fn symmetrize_bilateral(rule: &CubatureRule, axis: Option<usize>) -> Result<(CubatureRule, usize)> {
    let n = rule.n;
    if let Some(a) = axis.filter(|&a| a >= n) {
        return Err(CubatureError::InvalidInput(format!("axis {a} out of range for dimension {n}")));
    }
    let aligned = rotate(rule, &principal_alignment(rule));
    let (axis, perm) = match axis {
        Some(a) => (a, reflection_assignment(&aligned, a).0),
        None => (0..n)
            .map(|a| {
                let (p, c) = reflection_assignment(&aligned, a);
                (a, p, c)
            })
            .min_by(|x, y| x.2.total_cmp(&y.2))
            .map(|(a, p, _)| (a, p))
            .expect("n ≥ 1"),
    };
    let mut out = aligned.clone();
    let mut done = vec![false; rule.len()];
    for i in 0..rule.len() {
        if done[i] {
            continue;
        }
        let j = perm[i];
        let mirror = |k: usize, x: f64| if k == axis { -x } else { x };
        if j == i || done[j] || perm[j] != i {
            let p: Vec<f64> = aligned.point(i).iter().enumerate().map(|(k, &x)| 0.5 * (x + mirror(k, x))).collect();
            out.point_mut(i).copy_from_slice(&p);
            done[i] = true;
            continue;
        }
        let (pi, pj) = (aligned.point(i), aligned.point(j));
        let merged: Vec<f64> = (0..n).map(|k| 0.5 * (pi[k] + mirror(k, pj[k]))).collect();
        let reflected: Vec<f64> = merged.iter().enumerate().map(|(k, &x)| mirror(k, x)).collect();
        let w = 0.5 * (aligned.weights[i] + aligned.weights[j]);
        out.point_mut(i).copy_from_slice(&merged);
        out.point_mut(j).copy_from_slice(&reflected);
        out.weights[i] = w;
        out.weights[j] = w;
        done[i] = true;
        done[j] = true;
    }
    Ok((out, axis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_paper_rule_f64, entries, simplex_rule, TableId};
    use crate::moments::{build_moment_system, Region};
    use crate::rule::residuals;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_rotation(n: usize, seed: u64) -> DMatrix<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params: Vec<f64> = (0..n * (n - 1) / 2).map(|_| rng.random_range(-1.0..1.0)).collect();
        cayley_rotation(n, &params).unwrap()
    }

    fn max_residual(rule: &CubatureRule, d: u32) -> Vec<f64> {
        residuals(rule, &build_moment_system(rule.region, rule.n, d, 0).unwrap()).unwrap()
    }

    #[test]
    fn shells_of_published_rules() {
        let sizes = |t, r| {
            let rule = build_paper_rule_f64(t, r).unwrap();
            let (rt, wt) = default_shell_tolerances(&rule);
            detect_shells(&rule, rt, wt)
        };
        assert_eq!(sizes(TableId::T7_183_7, Region::ExpR2).sizes(), [1, 56, 126]);
        let s = sizes(TableId::T6_44_5, Region::ExpR);
        assert_eq!(s.sizes(), [12, 32]);
        assert!((s.shells[0].radius - 5.40578920).abs() < 1e-8);
        assert!((s.shells[1].radius - 11.85796266).abs() < 1e-8);
        let one = CubatureRule::from_flat(Region::Ball, 2, vec![0.1, 0.2], vec![1.0]).unwrap();
        assert_eq!(detect_shells(&one, 1e-9, 1e-9).sizes(), [1]);
    }

    #[test]
    fn shell_detection_is_idempotent() {
        let rule = build_paper_rule_f64(TableId::T6_127_7, Region::Ball).unwrap();
        let (rt, wt) = default_shell_tolerances(&rule);
        let a = detect_shells(&rule, rt, wt);
        let total: usize = a.sizes().iter().sum();
        assert_eq!(total, rule.len());
        // Reordering points by shell gives the same decomposition sizes.
        let order: Vec<usize> = a.shells.iter().flat_map(|s| s.members.clone()).collect();
        let rows: Vec<Vec<f64>> = order.iter().map(|&i| rule.point(i).to_vec()).collect();
        let ws: Vec<f64> = order.iter().map(|&i| rule.weights[i]).collect();
        let sorted = CubatureRule::new(rule.region, rule.n, rows, ws).unwrap();
        assert_eq!(detect_shells(&sorted, rt, wt).sizes(), a.sizes());
        assert!(a.shells.iter().all(|s| s.equal_weights));
    }

    #[test]
    fn align_first_point_to_axis() {
        let rule = CubatureRule::from_flat(Region::ExpR2, 2, vec![1.0, 1.0, -1.0, 0.5], vec![1.0, 1.0]).unwrap();
        let out = align_axes(&rule, &[0]).unwrap();
        assert!((out.point(0)[0] - 2f64.sqrt()).abs() < 1e-15 && out.point(0)[1] == 0.0);
        assert!((out.radius(1) - rule.radius(1)).abs() < 1e-15);
        let dup = CubatureRule::from_flat(Region::ExpR2, 2, vec![1.0, 1.0, 2.0, 2.0], vec![1.0, 1.0]).unwrap();
        assert!(matches!(align_axes(&dup, &[0, 1]), Err(CubatureError::RankDeficient)));
    }

    #[test]
    fn alignment_preserves_every_catalog_rule() {
        for e in entries() {
            let rule = e.build().unwrap();
            let order = angular_order(&rule, rule.radii().iter().position(|r| *r > 0.0).unwrap()).unwrap();
            let first = rule.radii().iter().position(|r| *r > 0.0).unwrap();
            let mut chosen = vec![first];
            for i in order {
                if chosen.len() == rule.n {
                    break;
                }
                let mut trial = chosen.clone();
                trial.push(i);
                if align_axes(&rule, &trial).is_ok() {
                    chosen = trial;
                }
            }
            let out = align_axes(&rule, &chosen).unwrap();
            let report = crate::rule::verify(&out, e.degree, e.table.verify_tolerance());
            assert!(report.pass, "{}: {:e}", e.id, report.max_abs_residual);
            for (j, &i) in chosen.iter().enumerate() {
                assert!(out.point(i)[j + 1..].iter().all(|x| *x == 0.0));
            }
        }
    }

    #[test]
    fn cayley_examples() {
        assert_eq!(cayley_rotation(3, &[0.0; 3]).unwrap(), DMatrix::identity(3, 3));
        let t: f64 = 0.37;
        let q = cayley_rotation(2, &[t]).unwrap();
        let th = 2.0 * t.atan();
        let want = DMatrix::from_row_slice(2, 2, &[th.cos(), -th.sin(), th.sin(), th.cos()]);
        assert!((q - want).amax() < 1e-15);
        let q5 = random_rotation(5, 9);
        assert!((q5.transpose() * &q5 - DMatrix::identity(5, 5)).amax() < 1e-13);
    }

    #[test]
    fn assignment_small_cases() {
        assert_eq!(linear_assignment(&[vec![0.0, 1.0], vec![1.0, 0.0]]), (vec![0, 1], 0.0));
        assert_eq!(linear_assignment(&[vec![1.0, 0.0], vec![0.0, 1.0]]), (vec![1, 0], 0.0));
    }

    fn brute_force(cost: &[Vec<f64>]) -> f64 {
        fn rec(cost: &[Vec<f64>], row: usize, used: &mut Vec<bool>) -> f64 {
            if row == cost.len() {
                return 0.0;
            }
            let mut best = f64::INFINITY;
            for j in 0..cost.len() {
                if !used[j] {
                    used[j] = true;
                    best = best.min(cost[row][j] + rec(cost, row + 1, used));
                    used[j] = false;
                }
            }
            best
        }
        rec(cost, 0, &mut vec![false; cost.len()])
    }

    proptest! {
        #[test]
        fn assignment_matches_exhaustive_search(size in 1usize..=7, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cost: Vec<Vec<f64>> = (0..size).map(|_| (0..size).map(|_| rng.random_range(0.0..10.0)).collect()).collect();
            let (perm, c) = linear_assignment(&cost);
            let mut seen = perm.clone();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..size).collect::<Vec<_>>());
            prop_assert!((c - brute_force(&cost)).abs() < 1e-9);
        }

        #[test]
        fn rotations_preserve_radii_and_residuals(seed in any::<u64>()) {
            let rule = build_paper_rule_f64(TableId::T4_23_5, Region::Ball).unwrap();
            let out = rotate(&rule, &random_rotation(4, seed));
            for (a, b) in rule.radii().iter().zip(out.radii()) {
                prop_assert!((a - b).abs() < 1e-12);
            }
            for (a, b) in max_residual(&rule, 5).iter().zip(max_residual(&out, 5)) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn assignment_beats_random_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cost: Vec<Vec<f64>> = (0..10).map(|_| (0..10).map(|_| rng.random_range(0.0..1.0)).collect()).collect();
        let (_, best) = linear_assignment(&cost);
        for _ in 0..1000 {
            let mut p: Vec<usize> = (0..10).collect();
            for i in (1..10).rev() {
                p.swap(i, rng.random_range(0..=i));
            }
            let c: f64 = p.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
            assert!(best <= c + 1e-12);
        }
    }

    /// Largest distance from a point of `a` to the nearest point of `b`.
    fn set_distance(a: &CubatureRule, b: &CubatureRule) -> f64 {
        a.rows().map(|p| b.rows().map(|q| dist(p, q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    }

    #[test]
    fn rotated_tetrahedron_returns_to_the_simple_form() {
        let tet = simplex_rule(Region::GaussianProb, 3, SimplexVariant::SimpleA).unwrap();
        for seed in 0..10 {
            let turned = rotate(&tet, &random_rotation(3, seed));
            let out = orient_simplex(&turned, &[0, 1, 2, 3]).unwrap();
            assert!(set_distance(&out, &tet) < 1e-10, "seed {seed}: {:?}", out.points);
        }
    }

    #[test]
    fn inner_simplex_of_the_22_point_rule_is_already_oriented() {
        let rule = build_paper_rule_f64(TableId::T5_22_4, Region::ExpR2).unwrap();
        let (rt, wt) = default_shell_tolerances(&rule);
        let inner = detect_shells(&rule, rt, wt).shells[1].members.clone();
        assert_eq!(inner.len(), 6);
        let out = orient_simplex(&rule, &inner).unwrap();
        assert!(out.points.iter().zip(&rule.points).all(|(a, b)| (a - b).abs() < 1e-12));
        assert!(matches!(
            orient_simplex(&rule, &inner[..5]),
            Err(CubatureError::NotRegularSimplex(_))
        ));
    }

    #[test]
    fn projection_examples() {
        let rule = CubatureRule::from_flat(Region::Ball, 2, vec![0.9, 0.0, 0.0, -1.1], vec![1.0, 1.0]).unwrap();
        let out = project_to_shell(&rule, &[0, 1], None, 1.0).unwrap();
        assert!(out.radii().iter().all(|r| (r - 1.0).abs() < 1e-15));
        let again = project_to_shell(&out, &[0, 1], None, 1.0).unwrap();
        assert_eq!(again, out);
        let centre = CubatureRule::from_flat(Region::Ball, 2, vec![0.0, 0.0], vec![1.0]).unwrap();
        assert!(matches!(project_to_shell(&centre, &[0], None, 1.0), Err(CubatureError::PointAtOrigin(0))));
    }

    #[test]
    fn symmetric_rule_is_a_fixed_point() {
        let rule = build_paper_rule_f64(TableId::T2_10_6, Region::ExpR2).unwrap();
        let (out, axis) = symmetrize_bilateral(&rule, None).unwrap();
        assert_eq!(axis, 0);
        let drift = out.points.iter().zip(&rule.points).chain(out.weights.iter().zip(&rule.weights)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(drift < 1e-13, "{drift:e}");
    }

    #[test]
    fn self_matched_point_lands_on_the_plane() {
        let rule = CubatureRule::from_flat(Region::ExpR2, 2, vec![0.01, 1.0, 1.0, -0.5, -1.02, -0.48], vec![1.0, 1.0, 1.1]).unwrap();
        let (out, axis) = symmetrize_bilateral(&rule, Some(0)).unwrap();
        assert_eq!(axis, 0);
        let on_plane = (0..3).filter(|&i| out.point(i)[0] == 0.0).count();
        assert_eq!(on_plane, 1);
        let mut pairs: Vec<(f64, f64, f64)> = (0..3).map(|i| (out.point(i)[0].abs(), out.point(i)[1], out.weights[i])).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert_eq!(pairs[1], pairs[2]);
    }
}
