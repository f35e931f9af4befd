//! Dense linear algebra over any [`Real`], used where `f64` is not enough.
//!
//! Only what the extended-precision Newton step needs: Householder QR with
//! column pivoting and a complete orthogonal decomposition that yields the
//! minimum-norm least-squares solution of a rank-deficient system.

use crate::real::Real;

/// Row-major dense matrix.
#[derive(Clone, Debug)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Real> Mat<T> {
    pub fn zeros(ctx: &T::Ctx, rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(ctx); rows * cols] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }
}

/// Householder reflector `I - beta v vᵀ` acting on rows `start..`.
struct Reflector<T> {
    start: usize,
    v: Vec<T>,
    beta: T,
}

impl<T: Real> Reflector<T> {
    /// Apply to a vector in place.
    fn apply_vec(&self, x: &mut [T]) {
        let ctx = self.beta.ctx();
        let mut s = T::zero(&ctx);
        for (vi, xi) in self.v.iter().zip(&x[self.start..]) {
            s = s + vi.clone() * xi;
        }
        if s.is_zero() {
            return;
        }
        let s = s * &self.beta;
        for (vi, xi) in self.v.iter().zip(&mut x[self.start..]) {
            *xi = xi.clone() - vi.clone() * &s;
        }
    }
}

/// Householder triangularization of `a` (in place), optionally pivoting on
/// the largest remaining column norm. Returns the reflectors and the column
/// permutation (`perm[k]` is the original column now at position `k`).
fn householder<T: Real>(a: &mut Mat<T>, pivot: bool) -> (Vec<Reflector<T>>, Vec<usize>) {
    let (m, p) = (a.rows, a.cols);
    let ctx = a.data.first().map(|v| v.ctx()).expect("non-empty matrix");
    let mut perm: Vec<usize> = (0..p).collect();
    let mut refl = Vec::new();
    for k in 0..m.min(p) {
        if pivot {
            let mut best = k;
            let mut best_norm = T::zero(&ctx);
            for j in k..p {
                let mut s = T::zero(&ctx);
                for i in k..m {
                    s = s + a.get(i, j).clone() * a.get(i, j);
                }
                if s > best_norm {
                    best_norm = s;
                    best = j;
                }
            }
            if best != k {
                for i in 0..m {
                    a.data.swap(i * p + k, i * p + best);
                }
                perm.swap(k, best);
            }
        }
        let mut norm2 = T::zero(&ctx);
        for i in k..m {
            norm2 = norm2 + a.get(i, k).clone() * a.get(i, k);
        }
        if norm2.is_zero() {
            continue;
        }
        let norm = norm2.sqrt();
        let x0 = a.get(k, k).clone();
        let alpha = if x0.is_negative() { norm } else { -norm };
        let mut v: Vec<T> = (k..m).map(|i| a.get(i, k).clone()).collect();
        v[0] = v[0].clone() - &alpha;
        let vnorm2 = v.iter().fold(T::zero(&ctx), |s, x| s + x.clone() * x);
        if vnorm2.is_zero() {
            continue;
        }
        let beta = T::from_i64(&ctx, 2) / vnorm2;
        for j in k + 1..p {
            let mut s = T::zero(&ctx);
            for (idx, vi) in v.iter().enumerate() {
                s = s + vi.clone() * a.get(k + idx, j);
            }
            if s.is_zero() {
                continue;
            }
            let s = s * &beta;
            for (idx, vi) in v.iter().enumerate() {
                let cur = a.get(k + idx, j).clone();
                a.set(k + idx, j, cur - vi.clone() * &s);
            }
        }
        a.set(k, k, alpha);
        for i in k + 1..m {
            a.set(i, k, T::zero(&ctx));
        }
        refl.push(Reflector { start: k, v, beta });
    }
    (refl, perm)
}

/// Minimum-norm solution of `min ‖A x − b‖` treating directions whose
/// pivoted-QR diagonal falls below `rel_tol · |R₀₀|` as null. Returns the
/// solution and the numerical rank.
pub fn min_norm_solve<T: Real>(a: &Mat<T>, b: &[T], rel_tol: &T) -> (Vec<T>, usize) {
    assert_eq!(a.rows, b.len());
    let ctx = b[0].ctx();
    let p = a.cols;
    let mut r = a.clone();
    let (refl, perm) = householder(&mut r, true);
    let mut c = b.to_vec();
    for h in &refl {
        h.apply_vec(&mut c);
    }
    let kmax = r.rows.min(p);
    let r00 = r.get(0, 0).abs();
    let mut rank = 0;
    if !r00.is_zero() {
        let cut = r00 * rel_tol;
        while rank < kmax && r.get(rank, rank).abs() > cut {
            rank += 1;
        }
    }
    if rank == 0 {
        return (vec![T::zero(&ctx); p], 0);
    }
    // [R11 R12] = [Lᵀ 0] Zᵀ via QR of its transpose.
    let mut top = Mat::zeros(&ctx, p, rank);
    for i in 0..rank {
        for j in i..p {
            top.set(j, i, r.get(i, j).clone());
        }
    }
    let (zrefl, _) = householder(&mut top, false);
    // Solve Lᵀ y = c[..rank], where L = top[..rank, ..rank] is upper triangular.
    let mut y = vec![T::zero(&ctx); p];
    for i in 0..rank {
        let mut s = c[i].clone();
        for j in 0..i {
            s = s - top.get(j, i).clone() * &y[j];
        }
        y[i] = s / top.get(i, i);
    }
    // z = Z [y; 0]
    for h in zrefl.iter().rev() {
        h.apply_vec(&mut y);
    }
    let mut x = vec![T::zero(&ctx); p];
    for (k, &orig) in perm.iter().enumerate() {
        x[orig] = y[k].clone();
    }
    (x, rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::{BigReal, Precision};

    fn mat(rows: usize, cols: usize, v: &[f64]) -> Mat<f64> {
        Mat { rows, cols, data: v.to_vec() }
    }

    #[test]
    fn full_rank_square_solve() {
        let a = mat(3, 3, &[4.0, 1.0, 2.0, 1.0, 3.0, 0.0, 2.0, 0.0, 5.0]);
        let x_true = [1.0, -2.0, 0.5];
        let b: Vec<f64> = (0..3).map(|i| (0..3).map(|j| a.get(i, j) * x_true[j]).sum()).collect();
        let (x, rank) = min_norm_solve(&a, &b, &1e-12);
        assert_eq!(rank, 3);
        for (u, v) in x.iter().zip(x_true) {
            assert!((u - v).abs() < 1e-13);
        }
    }

    #[test]
    fn underdetermined_gives_minimum_norm() {
        // x + y = 2 has minimum-norm solution (1, 1).
        let a = mat(1, 2, &[1.0, 1.0]);
        let (x, rank) = min_norm_solve(&a, &[2.0], &1e-12);
        assert_eq!(rank, 1);
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rank_deficient_matches_pseudoinverse() {
        // Rank-2 4x3 matrix; compare with nalgebra's SVD pseudoinverse.
        let v = [1.0, 2.0, 3.0, 2.0, 4.0, 6.1, 0.0, 1.0, 1.0, 1.0, 3.0, 4.0];
        let mut a = mat(4, 3, &v);
        // Make column 2 = column 0 + column 1 exactly.
        for i in 0..4 {
            let s = a.get(i, 0) + a.get(i, 1);
            a.set(i, 2, s);
        }
        let b = [1.0, 0.5, -1.0, 2.0];
        let (x, rank) = min_norm_solve(&a, &b, &1e-10);
        assert_eq!(rank, 2);
        let na = nalgebra::DMatrix::from_row_slice(4, 3, &a.data);
        let pinv = na.pseudo_inverse(1e-10).unwrap();
        let xr = pinv * nalgebra::DVector::from_row_slice(&b);
        for (u, v) in x.iter().zip(xr.iter()) {
            assert!((u - v).abs() < 1e-10, "{x:?} vs {xr}");
        }
    }

    #[test]
    fn extended_precision_solve() {
        let ctx = Precision::from_digits(60);
        let h = |i: i64, j: i64| BigReal::ratio(&ctx, 1, i + j + 1);
        // 5x5 Hilbert matrix, solution of all ones.
        let n = 5;
        let mut a = Mat::zeros(&ctx, n, n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, h(i as i64, j as i64));
            }
        }
        let b: Vec<BigReal> = (0..n)
            .map(|i| (0..n).fold(BigReal::zero(&ctx), |s, j| s + a.get(i, j).clone()))
            .collect();
        let (x, rank) = min_norm_solve(&a, &b, &BigReal::pow10_neg(&ctx, 30));
        assert_eq!(rank, 5);
        for xi in x {
            assert!((xi - BigReal::one(&ctx)).abs().to_f64() < 1e-50);
        }
    }
}
