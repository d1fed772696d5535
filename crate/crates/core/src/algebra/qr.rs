//! Gram–Schmidt factorisation `M = F R` with `F` special orthogonal and `R`
//! upper triangular with positive diagonal.

use super::matrix::{axpy, dot, norm, scale, Mat, Vector};
use crate::error::{Error, Result};

/// Relative pivot size below which a column counts as dependent.
pub const PIVOT_TOL: f64 = 1e-12;

/// Orthonormalises the first `k` columns of `m` (modified Gram–Schmidt,
/// applied twice) and returns the orthonormal columns together with the
/// upper-left `k×k` block of `R`.
fn orthonormalize<const N: usize>(m: &Mat<N>, k: usize) -> Result<(Vec<Vector<N>>, Mat<N>)> {
    let scale_ref = (0..N).map(|j| norm(&m.column(j))).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut q: Vec<Vector<N>> = Vec::with_capacity(k);
    let mut r = Mat::<N>::zeros();
    for j in 0..k {
        let mut v = m.column(j);
        for _ in 0..2 {
            for (i, qi) in q.iter().enumerate() {
                let c = dot(qi, &v);
                r[(i, j)] += c;
                v = axpy(-c, qi, &v);
            }
        }
        let nv = norm(&v);
        if nv < PIVOT_TOL * scale_ref {
            return Err(Error::SingularInput { pivot: j, norm: nv });
        }
        r[(j, j)] = nv;
        q.push(scale(1.0 / nv, &v));
    }
    Ok((q, r))
}

/// `M = F R` with `F ∈ SO(N)` and `R` upper triangular with positive diagonal.
pub fn gram_schmidt_qr<const N: usize>(m: &Mat<N>) -> Result<(Mat<N>, Mat<N>)> {
    let det = m.det();
    if det <= 0.0 {
        return Err(Error::NegativeOrientation { det });
    }
    let (q, r) = orthonormalize(m, N)?;
    let mut f = Mat::<N>::zeros();
    for (j, col) in q.iter().enumerate() {
        f.set_column(j, col);
    }
    Ok((f, r))
}

/// Orthonormalises the first `N-1` columns and completes them to a
/// positively oriented basis. The last column of `R` holds the coordinates
/// of the last column of `m`; its diagonal entry may have any sign.
pub fn gram_schmidt_complete<const N: usize>(m: &Mat<N>) -> Result<(Mat<N>, Mat<N>)> {
    let (q, mut r) = orthonormalize(m, N - 1)?;
    let mut f = Mat::<N>::zeros();
    for (j, col) in q.iter().enumerate() {
        f.set_column(j, col);
    }
    let last = f.completion();
    f.set_column(N - 1, &scale(1.0 / norm(&last), &last));
    let tail = m.column(N - 1);
    for i in 0..N {
        r[(i, N - 1)] = dot(&f.column(i), &tail);
    }
    Ok((f, r))
}
