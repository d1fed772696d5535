//! The double covers Π₃ : S³ → SO₃ and Π₄ : S³ × S³ → SO₄, their
//! differentials at the identity, and their inverses on the Lie algebras.

use super::matrix::{Mat3, Mat4};
use super::quaternion::{quat_exp, ImaginaryQuaternion, Quaternion, SpinPair, UnitQuaternion};
use crate::error::{Error, Result};

/// Skew-symmetry tolerance accepted by the splitting maps.
pub const SKEW_TOL: f64 = 1e-9;

/// `Π₃(z) h = z h z̄` written on the basis i, j, k of Im H.
pub fn pi3(z: UnitQuaternion) -> Mat3 {
    let Quaternion { a, b, c, d } = z.q();
    Mat3::from_rows([
        [a * a + b * b - c * c - d * d, -2.0 * a * d + 2.0 * b * c, 2.0 * a * c + 2.0 * b * d],
        [2.0 * a * d + 2.0 * b * c, a * a - b * b + c * c - d * d, -2.0 * a * b + 2.0 * c * d],
        [-2.0 * a * c + 2.0 * b * d, 2.0 * a * b + 2.0 * c * d, a * a - b * b - c * c + d * d],
    ])
}

/// `Π₄(z_l, z_r) q = z_l q z̄_r` on the basis 1, i, j, k of H, written
/// column by column.
pub fn pi4(z: SpinPair) -> Mat4 {
    let Quaternion { a: al, b: bl, c: cl, d: dl } = z.left.q();
    let Quaternion { a: ar, b: br, c: cr, d: dr } = z.right.q();
    Mat4::from_columns([
        [
            al * ar + bl * br + cl * cr + dl * dr,
            -al * br + bl * ar - cl * dr + dl * cr,
            -al * cr + bl * dr + cl * ar - dl * br,
            -al * dr - bl * cr + cl * br + dl * ar,
        ],
        [
            al * br - bl * ar - cl * dr + dl * cr,
            al * ar + bl * br - cl * cr - dl * dr,
            al * dr + bl * cr + cl * br + dl * ar,
            -al * cr + bl * dr - cl * ar + dl * br,
        ],
        [
            al * cr + bl * dr - cl * ar - dl * br,
            -al * dr + bl * cr + cl * br - dl * ar,
            al * ar - bl * br + cl * cr - dl * dr,
            al * br + bl * ar + cl * dr + dl * cr,
        ],
        [
            al * dr - bl * cr + cl * br - dl * ar,
            al * cr + bl * dr + cl * ar + dl * br,
            -al * br - bl * ar + cl * dr + dl * cr,
            al * ar - bl * br - cl * cr + dl * dr,
        ],
    ])
}

/// Differential of Π₃ at 1: `v ↦ 2 h × v`.
pub fn dpi3(h: ImaginaryQuaternion) -> Mat3 {
    let ImaginaryQuaternion { b, c, d } = h;
    Mat3::from_rows([
        [0.0, -2.0 * d, 2.0 * c],
        [2.0 * d, 0.0, -2.0 * b],
        [-2.0 * c, 2.0 * b, 0.0],
    ])
}

/// Differential of Π₄ at (1, 1).
pub fn dpi4(hl: ImaginaryQuaternion, hr: ImaginaryQuaternion) -> Mat4 {
    let (bl, cl, dl) = (hl.b, hl.c, hl.d);
    let (br, cr, dr) = (hr.b, hr.c, hr.d);
    Mat4::from_rows([
        [0.0, -(bl - br), -(cl - cr), -(dl - dr)],
        [bl - br, 0.0, -(dl + dr), cl + cr],
        [cl - cr, dl + dr, 0.0, -(bl + br)],
        [dl - dr, -(cl + cr), bl + br, 0.0],
    ])
}

/// Inverse of [`dpi3`] on so₃.
pub fn so3_split(m: &Mat3) -> Result<ImaginaryQuaternion> {
    let residual = m.skew_residual();
    if residual > SKEW_TOL {
        return Err(Error::NotSkew { residual });
    }
    Ok(ImaginaryQuaternion::new(
        0.25 * (m[(2, 1)] - m[(1, 2)]),
        0.25 * (m[(0, 2)] - m[(2, 0)]),
        0.25 * (m[(1, 0)] - m[(0, 1)]),
    ))
}

/// Inverse of [`dpi4`]: coordinates of a skew matrix in the basis
/// i_l, j_l, k_l, i_r, j_r, k_r of so₄.
pub fn so4_split(m: &Mat4) -> Result<(ImaginaryQuaternion, ImaginaryQuaternion)> {
    let residual = m.skew_residual();
    if residual > SKEW_TOL {
        return Err(Error::NotSkew { residual });
    }
    // Average the two copies of every entry so that roundoff asymmetry
    // does not leak into the split.
    let s = |i: usize, j: usize| 0.5 * (m[(i, j)] - m[(j, i)]);
    let (b_minus, c_minus, d_minus) = (s(1, 0), s(2, 0), s(3, 0));
    let (b_plus, c_plus, d_plus) = (s(3, 2), s(1, 3), s(2, 1));
    Ok((
        ImaginaryQuaternion::new(0.5 * (b_plus + b_minus), 0.5 * (c_plus + c_minus), 0.5 * (d_plus + d_minus)),
        ImaginaryQuaternion::new(0.5 * (b_plus - b_minus), 0.5 * (c_plus - c_minus), 0.5 * (d_plus - d_minus)),
    ))
}

/// One of the two preimages of a rotation under Π₃.
pub fn spin3_from_matrix(m: &Mat3) -> UnitQuaternion {
    // 4 z zᵀ is determined by the entries of m; read it off the largest
    // diagonal term to stay well conditioned.
    let t = m.trace();
    let diag = [1.0 + t, 1.0 + m[(0, 0)] - m[(1, 1)] - m[(2, 2)], 1.0 - m[(0, 0)] + m[(1, 1)] - m[(2, 2)], 1.0 - m[(0, 0)] - m[(1, 1)] + m[(2, 2)]];
    let k = (0..4).max_by(|&i, &j| diag[i].total_cmp(&diag[j])).unwrap_or(0);
    let s = 0.5 * diag[k].max(0.0).sqrt();
    let w = 0.25 / s;
    let q = match k {
        0 => Quaternion::new(s, w * (m[(2, 1)] - m[(1, 2)]), w * (m[(0, 2)] - m[(2, 0)]), w * (m[(1, 0)] - m[(0, 1)])),
        1 => Quaternion::new(w * (m[(2, 1)] - m[(1, 2)]), s, w * (m[(0, 1)] + m[(1, 0)]), w * (m[(0, 2)] + m[(2, 0)])),
        2 => Quaternion::new(w * (m[(0, 2)] - m[(2, 0)]), w * (m[(0, 1)] + m[(1, 0)]), s, w * (m[(1, 2)] + m[(2, 1)])),
        _ => Quaternion::new(w * (m[(1, 0)] - m[(0, 1)]), w * (m[(0, 2)] + m[(2, 0)]), w * (m[(1, 2)] + m[(2, 1)]), s),
    };
    UnitQuaternion::new_unchecked(q.scale(1.0 / q.norm()))
}

fn basis_images() -> [[Mat4; 4]; 4] {
    let e = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K].map(UnitQuaternion::new_unchecked);
    std::array::from_fn(|a| std::array::from_fn(|b| pi4(SpinPair::new(e[a], e[b]))))
}

/// One of the two preimages of a rotation under Π₄.
///
/// Π₄ is bilinear in `(z_l, z_r)` and the sixteen images `Π₄(e_a, e_b)`
/// are Frobenius-orthogonal with squared norm 4, so the coefficients
/// `K_ab = <M, Π₄(e_a, e_b)> / 4` form the rank-one matrix `z_l z_rᵀ`.
pub fn spin4_from_matrix(m: &Mat4) -> SpinPair {
    let basis = basis_images();
    let k: [[f64; 4]; 4] = std::array::from_fn(|a| std::array::from_fn(|b| 0.25 * m.frobenius_dot(&basis[a][b])));
    let col_norm = |b: usize| (0..4).map(|a| k[a][b] * k[a][b]).sum::<f64>();
    let b = (0..4).max_by(|&x, &y| col_norm(x).total_cmp(&col_norm(y))).unwrap_or(0);
    let n = col_norm(b).sqrt();
    let l = Quaternion::new(k[0][b], k[1][b], k[2][b], k[3][b]).scale(1.0 / n);
    let r: [f64; 4] = std::array::from_fn(|bb| (0..4).map(|a| k[a][bb] * l.to_array()[a]).sum());
    let r = Quaternion::from(r);
    SpinPair::new(UnitQuaternion::new_unchecked(l), UnitQuaternion::new_unchecked(r.scale(1.0 / r.norm())))
}

/// `exp` of a skew 3×3 matrix computed through the spin cover.
pub fn exp_so3(m: &Mat3) -> Result<Mat3> {
    Ok(pi3(quat_exp(so3_split(m)?)))
}

/// `exp` of a skew 4×4 matrix computed through the spin cover.
pub fn exp_so4(m: &Mat4) -> Result<Mat4> {
    let (hl, hr) = so4_split(m)?;
    Ok(pi4(SpinPair::exp(hl, hr)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn q(a: f64, b: f64, c: f64, d: f64) -> UnitQuaternion {
        UnitQuaternion::normalize(Quaternion::new(a, b, c, d)).unwrap()
    }

    #[test]
    fn pi3_examples() {
        assert_eq!(pi3(UnitQuaternion::ONE), Mat3::identity());
        assert_eq!(pi3(UnitQuaternion::K), Mat3::diag(&[-1.0, -1.0, 1.0]));
        let r = pi3(quat_exp(ImaginaryQuaternion::new(0.0, 0.0, PI / 4.0)));
        let quarter = Mat3::from_rows([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(r.max_abs_diff(&quarter) < 1e-15);
    }

    #[test]
    fn pi4_is_left_right_multiplication() {
        let z = SpinPair::new(q(0.3, -0.2, 0.9, 0.1), q(-0.5, 0.4, 0.2, 0.7));
        let m = pi4(z);
        let basis = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
        for (j, e) in basis.iter().enumerate() {
            let img = z.left.q() * *e * z.right.q().conj();
            let col = m.column(j);
            assert!(Quaternion::from(col).max_abs_diff(img) < 1e-15);
        }
    }

    #[test]
    fn pi4_kernel_and_arnold_transpose() {
        assert_eq!(pi4(SpinPair::IDENTITY), Mat4::identity());
        assert_eq!(pi4(-SpinPair::IDENTITY), Mat4::identity());
        let at = Mat4::from_rows([
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(pi4(SpinPair::new(-UnitQuaternion::ONE, UnitQuaternion::K)), at);
    }

    #[test]
    fn dpi_examples() {
        assert_eq!(dpi3(ImaginaryQuaternion::ZERO), Mat3::zeros());
        let m = dpi3(ImaginaryQuaternion::new(1.5, 0.0, 0.0));
        assert_eq!(m, Mat3::from_rows([[0.0, 0.0, 0.0], [0.0, 0.0, -3.0], [0.0, 3.0, 0.0]]));
        assert_eq!(dpi4(ImaginaryQuaternion::ZERO, ImaginaryQuaternion::ZERO), Mat4::zeros());
        let (bl, br, d) = (2.0, 0.5, 0.75);
        let m = dpi4(ImaginaryQuaternion::new(bl, 0.0, d), ImaginaryQuaternion::new(br, 0.0, d));
        assert_eq!(m, Mat4::tridiagonal_skew(&[bl - br, 2.0 * d, bl + br]));
    }

    #[test]
    fn so4_basis_matrices() {
        let il = Mat4::from_rows([
            [0.0, -1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
        ]);
        let kr = Mat4::from_rows([
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(so4_split(&il).unwrap(), (ImaginaryQuaternion::new(1.0, 0.0, 0.0), ImaginaryQuaternion::ZERO));
        assert_eq!(so4_split(&kr).unwrap(), (ImaginaryQuaternion::ZERO, ImaginaryQuaternion::new(0.0, 0.0, 1.0)));
        assert_eq!(so4_split(&Mat4::zeros()).unwrap(), (ImaginaryQuaternion::ZERO, ImaginaryQuaternion::ZERO));
        assert!(matches!(so4_split(&Mat4::identity()), Err(Error::NotSkew { .. })));
    }

    #[test]
    fn preimages() {
        let z = q(0.1, -0.7, 0.3, 0.5);
        let w = spin3_from_matrix(&pi3(z));
        assert!((w.dot(z).abs() - 1.0).abs() < 1e-14);
        let p = SpinPair::new(q(0.6, 0.1, -0.2, 0.3), q(-0.1, 0.1, 0.9, -0.4));
        let w = spin4_from_matrix(&pi4(p));
        assert!(pi4(w).max_abs_diff(&pi4(p)) < 1e-14);
        assert!((w.left.dot(p.left).abs() - 1.0).abs() < 1e-14);
    }
}
