//! Linearized update steps in double precision.

use nalgebra::{DMatrix, DVector};

/// `−J⁺ r` with singular values below `rel_cut · σ_max` discarded. The
/// Jacobian is first reduced to a square triangular factor by QR of
/// whichever of `J` or `Jᵀ` is tall, and the SVD is taken of that factor.
pub(crate) fn pinv_step(j: &DMatrix<f64>, r: &DVector<f64>, rel_cut: f64) -> DVector<f64> {
    let (m, p) = j.shape();
    if m >= p {
        let qr = j.clone().qr();
        let qtr = qr.q().transpose() * r;
        let rmat = qr.r();
        -truncated_solve(rmat, &qtr, rel_cut)
    } else {
        // Jᵀ = Q R, so J = Rᵀ Qᵀ and J⁺ = Q (Rᵀ)⁺.
        let qr = j.transpose().qr();
        let y = truncated_solve(qr.r().transpose(), r, rel_cut);
        -(qr.q() * y)
    }
}

fn truncated_solve(a: DMatrix<f64>, b: &DVector<f64>, rel_cut: f64) -> DVector<f64> {
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    if smax == 0.0 {
        return DVector::zeros(svd.v_t.as_ref().map_or(0, |v| v.ncols()));
    }
    svd.solve(b, rel_cut * smax).expect("both factors computed")
}

/// Damped step `−(JᵀJ + λI)⁻¹ Jᵀ r`, solved in whichever of the two
/// equivalent forms has the smaller matrix. `None` if the damped matrix is
/// not positive definite (only possible for λ ≤ 0 or non-finite input).
pub(crate) fn damped_step(j: &DMatrix<f64>, r: &DVector<f64>, lambda: f64) -> Option<DVector<f64>> {
    let (m, p) = j.shape();
    if m <= p {
        let mut g = j * j.transpose();
        for i in 0..m {
            g[(i, i)] += lambda;
        }
        let y = g.cholesky()?.solve(r);
        Some(-(j.transpose() * y))
    } else {
        let mut g = j.transpose() * j;
        for i in 0..p {
            g[(i, i)] += lambda;
        }
        Some(-g.cholesky()?.solve(&(j.transpose() * r)))
    }
}
