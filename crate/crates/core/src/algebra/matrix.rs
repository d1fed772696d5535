//! Dense row-major square matrices of fixed size.
//!
//! Everything in this crate is 3×3 or 4×4, so the dimension is a const
//! generic and the storage is a plain array.

use serde::de::{Deserialize, Deserializer, Error as _};
use serde::ser::{Serialize, Serializer};
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// A point or vector in `R^N`.
pub type Vector<const N: usize> = [f64; N];

pub fn dot<const N: usize>(u: &Vector<N>, v: &Vector<N>) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn norm<const N: usize>(v: &Vector<N>) -> f64 {
    dot(v, v).sqrt()
}

pub fn axpy<const N: usize>(alpha: f64, x: &Vector<N>, y: &Vector<N>) -> Vector<N> {
    std::array::from_fn(|i| alpha * x[i] + y[i])
}

pub fn scale<const N: usize>(alpha: f64, x: &Vector<N>) -> Vector<N> {
    x.map(|v| alpha * v)
}

pub fn sub<const N: usize>(x: &Vector<N>, y: &Vector<N>) -> Vector<N> {
    std::array::from_fn(|i| x[i] - y[i])
}

pub fn max_abs_diff_vec<const N: usize>(x: &Vector<N>, y: &Vector<N>) -> f64 {
    x.iter().zip(y).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
}

/// Square matrix stored by rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat<const N: usize>(pub [[f64; N]; N]);

pub type Mat3 = Mat<3>;
pub type Mat4 = Mat<4>;

impl<const N: usize> Default for Mat<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Mat<N> {
    pub fn zeros() -> Self {
        Mat([[0.0; N]; N])
    }

    pub fn identity() -> Self {
        Self::diag(&[1.0; N])
    }

    pub fn diag(d: &[f64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn from_rows(rows: [[f64; N]; N]) -> Self {
        Mat(rows)
    }

    pub fn from_columns(cols: [[f64; N]; N]) -> Self {
        Mat(cols).transpose()
    }

    /// Skew-symmetric tridiagonal matrix with subdiagonal `c` and
    /// superdiagonal `-c`.
    pub fn tridiagonal_skew(c: &[f64]) -> Self {
        assert_eq!(c.len() + 1, N, "need N-1 subdiagonal entries");
        let mut m = Self::zeros();
        for (i, &ci) in c.iter().enumerate() {
            m.0[i + 1][i] = ci;
            m.0[i][i + 1] = -ci;
        }
        m
    }

    pub fn transpose(&self) -> Self {
        Mat(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i])))
    }

    pub fn column(&self, j: usize) -> Vector<N> {
        std::array::from_fn(|i| self.0[i][j])
    }

    pub fn row(&self, i: usize) -> Vector<N> {
        self.0[i]
    }

    pub fn set_column(&mut self, j: usize, v: &Vector<N>) {
        for i in 0..N {
            self.0[i][j] = v[i];
        }
    }

    pub fn mul_vec(&self, v: &Vector<N>) -> Vector<N> {
        std::array::from_fn(|i| dot(&self.0[i], v))
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Mat(self.0.map(|r| r.map(|v| alpha * v)))
    }

    pub fn trace(&self) -> f64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    /// Frobenius inner product.
    pub fn frobenius_dot(&self, other: &Self) -> f64 {
        let mut s = 0.0;
        for i in 0..N {
            for j in 0..N {
                s += self.0[i][j] * other.0[i][j];
            }
        }
        s
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> f64 {
        let mut a = self.0;
        let mut det = 1.0;
        for col in 0..N {
            let pivot = (col..N)
                .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
                .unwrap_or(col);
            if a[pivot][col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det *= a[col][col];
            for r in col + 1..N {
                let f = a[r][col] / a[col][col];
                for c in col..N {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
        det
    }

    /// Residual of `MᵀM = I`.
    pub fn orthogonality_residual(&self) -> f64 {
        (self.transpose() * *self).max_abs_diff(&Self::identity())
    }

    pub fn skew_residual(&self) -> f64 {
        (*self + self.transpose()).max_abs()
    }

    pub fn is_special_orthogonal(&self, tol: f64) -> bool {
        self.orthogonality_residual() < tol && (self.det() - 1.0).abs() < tol
    }

    /// Vector completing the first `N-1` columns to a positively oriented
    /// basis: its entries are the signed cofactors along the last column.
    pub fn completion(&self) -> Vector<N> {
        std::array::from_fn(|i| {
            let mut m = *self;
            for r in 0..N {
                m.0[r][N - 1] = if r == i { 1.0 } else { 0.0 };
            }
            m.det()
        })
    }
}

impl<const N: usize> Index<(usize, usize)> for Mat<N> {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Mat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Mul for Mat<N> {
    type Output = Mat<N>;
    fn mul(self, rhs: Mat<N>) -> Mat<N> {
        let mut out = Mat::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl<const N: usize> Add for Mat<N> {
    type Output = Mat<N>;
    fn add(self, rhs: Mat<N>) -> Mat<N> {
        Mat(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j] + rhs.0[i][j])))
    }
}

impl<const N: usize> Sub for Mat<N> {
    type Output = Mat<N>;
    fn sub(self, rhs: Mat<N>) -> Mat<N> {
        Mat(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j] - rhs.0[i][j])))
    }
}

impl<const N: usize> Neg for Mat<N> {
    type Output = Mat<N>;
    fn neg(self) -> Mat<N> {
        self.scaled(-1.0)
    }
}

impl<const N: usize> Serialize for Mat<N> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<f64>> = self.0.iter().map(|r| r.to_vec()).collect();
        rows.serialize(s)
    }
}

impl<'de, const N: usize> Deserialize<'de> for Mat<N> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<f64>> = Vec::deserialize(d)?;
        if rows.len() != N || rows.iter().any(|r| r.len() != N) {
            return Err(D::Error::custom(format!("expected a {N}x{N} array of rows")));
        }
        let mut m = Mat::zeros();
        for (i, r) in rows.iter().enumerate() {
            m.0[i].copy_from_slice(r);
        }
        Ok(m)
    }
}
