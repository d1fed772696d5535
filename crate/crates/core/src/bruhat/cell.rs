//! Bruhat cells of `SO(N)`: identification of the signed permutation
//! representative, the action `B(U, Q)`, and the maps `Δ±`, `chop±`, `TR`
//! and `AD`.

use super::perm::{DiagonalSign, SignedPermutation};
use crate::algebra::matrix::Mat;
use crate::algebra::qr::gram_schmidt_qr;
use crate::error::{Error, Result};

/// Entries at or below this size count as zero during cell identification.
pub const PIVOT_TOL: f64 = 1e-9;

/// `U · Q · U2 = P` with `U` unit upper triangular and `U2` upper triangular
/// with positive diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellDecomposition<const N: usize> {
    pub p: SignedPermutation<N>,
    pub u: Mat<N>,
    pub u2: Mat<N>,
}

/// Finds the signed permutation whose Bruhat cell contains `q`.
pub fn identify_cell<const N: usize>(q: &Mat<N>) -> Result<CellDecomposition<N>> {
    let mut m = *q;
    let mut u = Mat::<N>::identity();
    let mut u2 = Mat::<N>::identity();
    let mut assigned = [false; N];
    let mut image = [0usize; N];
    let mut signs = [1i8; N];
    for j in 0..N {
        let i = (0..N)
            .rev()
            .find(|&i| !assigned[i] && m[(i, j)].abs() > PIVOT_TOL)
            .ok_or(Error::DegeneratePivot { column: j })?;
        let pivot = m[(i, j)];
        for r in 0..i {
            if assigned[r] {
                continue;
            }
            let f = m[(r, j)] / pivot;
            if f == 0.0 {
                continue;
            }
            for c in 0..N {
                m[(r, c)] -= f * m[(i, c)];
                u[(r, c)] -= f * u[(i, c)];
            }
            m[(r, j)] = 0.0;
        }
        for c in j + 1..N {
            let f = m[(i, c)] / pivot;
            if f == 0.0 {
                continue;
            }
            for r in 0..N {
                m[(r, c)] -= f * m[(r, j)];
                u2[(r, c)] -= f * u2[(r, j)];
            }
            m[(i, c)] = 0.0;
        }
        let s = 1.0 / pivot.abs();
        for r in 0..N {
            m[(r, j)] *= s;
            u2[(r, j)] *= s;
        }
        assigned[i] = true;
        image[j] = i;
        signs[j] = if pivot > 0.0 { 1 } else { -1 };
    }
    let p = SignedPermutation::new(image, signs)?;
    Ok(CellDecomposition { p, u, u2 })
}

/// `B(U, Q)`: the orthogonal factor of `U · Q`, which lies in the cell of `Q`.
pub fn bruhat_action<const N: usize>(u: &Mat<N>, q: &Mat<N>) -> Result<Mat<N>> {
    Ok(gram_schmidt_qr(&(*u * *q))?.0)
}

/// `Δ⁻` of a cell representative: `δᵢ = P_{i,j} (-1)^{NE(i)}`.
pub fn delta_minus_perm<const N: usize>(p: &SignedPermutation<N>) -> DiagonalSign<N> {
    let signs = std::array::from_fn(|i| {
        let e = p.entry_in_row(i);
        if p.ne_count(i) % 2 == 0 {
            e
        } else {
            -e
        }
    });
    DiagonalSign::new(signs).expect("Δ⁻ has determinant one")
}

pub fn delta_minus<const N: usize>(q: &Mat<N>) -> Result<DiagonalSign<N>> {
    Ok(delta_minus_perm(&identify_cell(q)?.p))
}

pub fn delta_plus<const N: usize>(q: &Mat<N>) -> Result<DiagonalSign<N>> {
    delta_minus(&tr_star(q))
}

/// `chop⁻(Q) = Δ⁻(Q) A`.
pub fn chop_minus<const N: usize>(q: &Mat<N>) -> Result<SignedPermutation<N>> {
    Ok(delta_minus(q)?.to_permutation().compose(&arnold_matrix()))
}

/// `chop⁺(Q) = Δ⁺(Q) Aᵀ`.
pub fn chop_plus<const N: usize>(q: &Mat<N>) -> Result<SignedPermutation<N>> {
    Ok(delta_plus(q)?.to_permutation().compose(&arnold_matrix().transpose()))
}

/// Anti-diagonal matrix with `A_{i, N+1-i} = (-1)^{i+1}`.
pub fn arnold_matrix<const N: usize>() -> SignedPermutation<N> {
    let image = std::array::from_fn(|j| N - 1 - j);
    // column j holds row N-1-j, whose sign is (-1)^(N-1-j) in zero-based rows
    let signs = std::array::from_fn(|j| if (N - 1 - j) % 2 == 0 { 1 } else { -1 });
    SignedPermutation::new(image, signs).expect("A has determinant one")
}

/// `J₊ = diag(1, -1, 1, -1, ...)`.
pub fn jplus<const N: usize>() -> Mat<N> {
    Mat::diag(&std::array::from_fn(|i| if i % 2 == 0 { 1.0 } else { -1.0 }))
}

/// `Mᵐₛ = diag(-1, ..., -1, 1, ..., 1)` of size `m` with `(m-s)/2` minus signs.
pub fn m_s_matrix(m: usize, s: i64) -> Result<nalgebra::DMatrix<f64>> {
    if s.unsigned_abs() as usize > m || (m as i64 - s) % 2 != 0 {
        return Err(Error::BadSignature { m, s });
    }
    let minus = ((m as i64 - s) / 2) as usize;
    Ok(nalgebra::DMatrix::from_fn(m, m, |i, j| match (i == j, i < minus) {
        (false, _) => 0.0,
        (true, true) => -1.0,
        (true, false) => 1.0,
    }))
}

/// `TR(Q) = J₊ Qᵀ J₊`.
pub fn tr_matrix<const N: usize>(q: &Mat<N>) -> Mat<N> {
    let j = jplus::<N>();
    j * q.transpose() * j
}

/// `TR*(Q) = J₊ Q J₊`.
pub fn tr_star<const N: usize>(q: &Mat<N>) -> Mat<N> {
    let j = jplus::<N>();
    j * *q * j
}

/// `AD(Q) = Aᵀ Q A`.
pub fn ad_matrix<const N: usize>(q: &Mat<N>) -> Mat<N> {
    let a = arnold_matrix::<N>().to_matrix();
    a.transpose() * *q * a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::Mat4;
    use crate::bruhat::perm::{parse_signed_perm, SignedPerm4};

    fn m(rows: [[f64; 4]; 4]) -> Mat4 {
        Mat4::from_rows(rows)
    }

    #[test]
    fn arnold_matrix_display() {
        let a = arnold_matrix::<4>().to_matrix();
        assert_eq!(
            a,
            m([[0.0, 0.0, 0.0, 1.0], [0.0, 0.0, -1.0, 0.0], [0.0, 1.0, 0.0, 0.0], [-1.0, 0.0, 0.0, 0.0]])
        );
        assert_eq!(jplus::<4>() * SignedPerm4::new([3, 2, 1, 0], [1; 4]).unwrap().to_matrix(), a);
        assert_eq!(arnold_matrix::<4>().transpose(), parse_signed_perm("P_(14)(23);5").unwrap());
    }

    #[test]
    fn representatives_identify_to_themselves() {
        for p in SignedPerm4::all() {
            let d = identify_cell(&p.to_matrix()).unwrap();
            assert_eq!(d.p, p);
            assert_eq!(d.u, Mat4::identity());
            assert_eq!(d.u2, Mat4::identity());
        }
    }

    #[test]
    fn decomposition_reproduces_representative() {
        let q = bruhat_action(
            &m([[1.0, 0.3, -2.0, 0.5], [0.0, 1.0, 0.7, 1.1], [0.0, 0.0, 1.0, -0.4], [0.0, 0.0, 0.0, 1.0]]),
            &parse_signed_perm::<4>("P_(1342);13").unwrap().to_matrix(),
        )
        .unwrap();
        let d = identify_cell(&q).unwrap();
        assert_eq!(d.p.to_string(), "P_(1342);13");
        assert!((d.u * q * d.u2).max_abs_diff(&d.p.to_matrix()) < 1e-12);
    }

    #[test]
    fn worked_chop_example() {
        let q = m([[0.0, -1.0, 0.0, 0.0], [0.0, 0.0, 0.0, -1.0], [-1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]]);
        assert_eq!(
            chop_minus(&q).unwrap().to_matrix(),
            m([[0.0, 0.0, 0.0, -1.0], [0.0, 0.0, 1.0, 0.0], [0.0, -1.0, 0.0, 0.0], [1.0, 0.0, 0.0, 0.0]])
        );
        assert_eq!(
            chop_plus(&q).unwrap().to_matrix(),
            m([[0.0, 0.0, 0.0, -1.0], [0.0, 0.0, -1.0, 0.0], [0.0, 1.0, 0.0, 0.0], [1.0, 0.0, 0.0, 0.0]])
        );
    }

    #[test]
    fn chop_of_identity_and_arnold() {
        let i = Mat4::identity();
        assert_eq!(chop_minus(&i).unwrap(), arnold_matrix());
        assert_eq!(chop_plus(&i).unwrap(), arnold_matrix().transpose());
        assert_eq!(delta_minus(&arnold_matrix::<4>().to_matrix()).unwrap(), DiagonalSign::identity());
    }

    #[test]
    fn m_s_matrices() {
        let d = m_s_matrix(4, 0).unwrap();
        assert_eq!(d.diagonal().as_slice(), &[-1.0, -1.0, 1.0, 1.0]);
        assert_eq!(m_s_matrix(4, 4).unwrap(), nalgebra::DMatrix::identity(4, 4));
        assert!(matches!(m_s_matrix(4, 1), Err(Error::BadSignature { m: 4, s: 1 })));
        assert!(matches!(m_s_matrix(2, 4), Err(Error::BadSignature { .. })));
    }

    #[test]
    fn degenerate_input() {
        let mut z = Mat4::identity();
        z[(0, 0)] = 0.0;
        assert!(matches!(identify_cell(&z), Err(Error::DegeneratePivot { column: 0 })));
    }
}
