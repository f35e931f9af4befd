//! Integer lattice reduction for small bases, used to find integer
//! relations among a handful of reals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bigreal::{BigReal, Precision};
use crate::real::Real;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn fdot(a: &[BigReal], b: &[BigReal]) -> BigReal {
    a.iter().zip(b).fold(BigReal::zero(&a[0].ctx()), |s, (x, y)| s + x.clone() * y)
}

/// Gram-Schmidt coefficients `mu` and squared norms `B` of `basis`, in
/// floating point at precision `prec`.
fn gram_schmidt(basis: &[Vec<BigInt>], prec: &Precision) -> (Vec<Vec<BigReal>>, Vec<BigReal>) {
    let k = basis.len();
    let zero = BigReal::zero(prec);
    let mut star: Vec<Vec<BigReal>> = Vec::with_capacity(k);
    let mut mu = vec![vec![zero.clone(); k]; k];
    let mut norms: Vec<BigReal> = Vec::with_capacity(k);
    for i in 0..k {
        let bi: Vec<BigReal> = basis[i].iter().map(|x| BigReal::from_bigint(prec, x)).collect();
        let mut v = bi.clone();
        for j in 0..i {
            if norms[j].is_zero() {
                continue;
            }
            mu[i][j] = fdot(&bi, &star[j]) / &norms[j];
            for (vt, st) in v.iter_mut().zip(&star[j]) {
                *vt = vt.clone() - mu[i][j].clone() * st;
            }
        }
        norms.push(fdot(&v, &v));
        star.push(v);
    }
    (mu, norms)
}

fn round_to_int(x: &BigReal) -> BigInt {
    let half = BigReal::ratio(&x.ctx(), 1, 2);
    let (n, d) = (x.clone() + half).floor().to_exact_ratio();
    n / d
}

/// LLL reduction with `δ = 3/4`, carrying Gram-Schmidt data in floating
/// point with about three times as many digits as the largest entry.
pub(crate) fn lll_reduce(mut basis: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let k = basis.len();
    let bits = basis.iter().flatten().map(|x| x.bits()).max().unwrap_or(1);
    let prec = Precision::from_digits((bits as f64 * std::f64::consts::LOG10_2 * 3.0) as u32 + 30);
    let delta = BigReal::ratio(&prec, 3, 4);
    let (mut mu, mut norms) = gram_schmidt(&basis, &prec);
    let mut i = 1;
    let mut guard = 0usize;
    while i < k && guard < 100_000 {
        guard += 1;
        for j in (0..i).rev() {
            let q = round_to_int(&mu[i][j]);
            if q.is_zero() {
                continue;
            }
            let bj = basis[j].clone();
            for (x, y) in basis[i].iter_mut().zip(&bj) {
                *x -= &q * y;
            }
            let qr = BigReal::from_bigint(&prec, &q);
            for l in 0..j {
                mu[i][l] = mu[i][l].clone() - qr.clone() * &mu[j][l];
            }
            mu[i][j] = mu[i][j].clone() - &qr;
        }
        let rhs = (delta.clone() - mu[i][i - 1].clone() * &mu[i][i - 1]) * &norms[i - 1];
        if norms[i] >= rhs {
            i += 1;
        } else {
            basis.swap(i, i - 1);
            (mu, norms) = gram_schmidt(&basis, &prec);
            i = (i - 1).max(1);
        }
    }
    basis
}

/// Small integer vector `c` with `Σ cⱼ xⱼ ≈ 0`, where the reals are given as
/// integers already multiplied by a large common scale. Returns the
/// reduced vectors in order of increasing length.
pub(crate) fn integer_relations(scaled: &[BigInt]) -> Vec<Vec<BigInt>> {
    let k = scaled.len();
    let basis: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            let mut row = vec![BigInt::zero(); k + 1];
            row[i] = BigInt::one();
            row[k] = scaled[i].clone();
            row
        })
        .collect();
    let mut reduced = lll_reduce(basis);
    reduced.sort_by_key(|v| dot(v, v));
    reduced.into_iter().map(|mut v| {
        v.truncate(k);
        if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in &mut v {
                *x = -x.clone();
            }
        }
        v
    }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reduces_a_textbook_basis() {
        // Reduces to (0,1,0), (1,0,1), (−1,0,2).
        let b = vec![ints(&[1, 1, 1]), ints(&[-1, 0, 2]), ints(&[3, 5, 6])];
        let r = lll_reduce(b);
        let mut lens: Vec<BigInt> = r.iter().map(|v| dot(v, v)).collect();
        lens.sort();
        assert_eq!(lens, ints(&[1, 2, 5]));
    }

    #[test]
    fn finds_the_golden_ratio_relation() {
        // φ² − φ − 1 = 0 with φ scaled by 10^20.
        let scale = num_traits::pow(BigInt::from(10), 20);
        let phi = BigInt::from(161803398874989484820u128);
        let phi2 = BigInt::from(261803398874989484820u128);
        let rel = integer_relations(&[scale, phi, phi2]);
        assert_eq!(rel[0], ints(&[1, 1, -1]));
    }
}
