//! Bruhat cells of Spin₄ and the spin versions of `chop±`.

use super::cell::{ad_matrix, arnold_matrix, identify_cell, jplus, tr_matrix, PIVOT_TOL};
use super::perm::{SignedPerm4, SignedPermutation};
use crate::algebra::cover::{dpi4, pi4, spin4_from_matrix};
use crate::algebra::lift::{lift_continuous, nearest_preimage, Cover};
use crate::algebra::matrix::{Mat, Mat4};
use crate::algebra::qr::gram_schmidt_qr;
use crate::algebra::quaternion::{ImaginaryQuaternion, SpinPair};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// First step size tried by the spin chop; halved until two successive
/// classifications agree.
pub const CHOP_INITIAL_STEP: f64 = 1e-3;
/// Smallest step size before the chop gives up.
pub const CHOP_MIN_STEP: f64 = 1e-8;

const CELL_PATH_STEPS: usize = 16;
const CHOP_PATH_STEPS: usize = 64;

/// A spin lying over a signed permutation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinCellRep {
    pub spin: SpinPair,
    pub matrix: SignedPerm4,
}

impl SpinCellRep {
    /// Checks that `Π₄(spin)` is a signed permutation within `1e-9`.
    pub fn new(spin: SpinPair) -> Result<Self> {
        let matrix = SignedPerm4::from_matrix(&pi4(spin), PIVOT_TOL)?;
        Ok(SpinCellRep { spin, matrix })
    }

    /// Whether the two representatives agree to `tol`.
    pub fn same_as(&self, other: &SpinCellRep, tol: f64) -> bool {
        self.spin.distance(other.spin) < tol
    }
}

/// The preimage of `p` closest to `near`, computed from the exact matrix.
fn exact_preimage<const N: usize, S: Cover<N>>(p: &SignedPermutation<N>, near: S) -> S {
    nearest_preimage(&near, &p.to_matrix()).0
}

/// Representative of the cell of `z` in the spin group covering SO(N),
/// together with its signed permutation matrix.
///
/// The triangular factor `U` of the decomposition `U Q U₂ = P` is shrunk to
/// `I` along `s ↦ I + s(U - I)`; the path `GS((I + s(U - I))Q)` stays in the
/// cell of `Q` and is lifted from `z`.
pub fn identify_cell_lift<const N: usize, S: Cover<N>>(z: S) -> Result<(S, SignedPermutation<N>)> {
    let q = z.project();
    let d = identify_cell(&q)?;
    let eye = Mat::<N>::identity();
    let path = |s: f64| gram_schmidt_qr(&((eye + (d.u - eye).scaled(s)) * q)).map(|(f, _)| f);
    let end = lift_continuous(&path, z, CELL_PATH_STEPS)?;
    let spin = exact_preimage(&d.p, end);
    if spin.distance(&end) > 1e-6 {
        return Err(Error::Inconclusive(format!(
            "cell path ended {:e} away from its representative",
            spin.distance(&end)
        )));
    }
    Ok((spin, d.p))
}

/// As [`identify_cell_lift`] for frames `Q` whose entries below the diagonal
/// decay like powers of `sigma`, e.g. `Q ≈ exp(σΛ)` with `σ` small.
///
/// `D_s Q D_s⁻¹` with `D_s = diag(1, 1/s, …, 1/s^{N-1})` lies in the cell of
/// `Q` for every `s > 0`; the path from `s = 1` to `s = sigma` is lifted from
/// `z` and its well-conditioned endpoint is classified.
pub fn identify_cell_scaled<const N: usize, S: Cover<N>>(z: S, sigma: f64) -> Result<(S, SignedPermutation<N>)> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidInput(format!("scale must be positive, got {sigma}")));
    }
    let q = z.project();
    let ln_sigma = sigma.ln();
    let path = |u: f64| {
        let ln_s = u * ln_sigma;
        let scaled = Mat::<N>(std::array::from_fn(|i| {
            std::array::from_fn(|j| q[(i, j)] * ((j as f64 - i as f64) * ln_s).exp())
        }));
        gram_schmidt_qr(&scaled).map(|(f, _)| f)
    };
    identify_cell_lift(lift_continuous(&path, z, CHOP_PATH_STEPS)?)
}

/// The representative `P̃` of the cell of Spin₄ containing `z`.
pub fn identify_cell_spin(z: SpinPair) -> Result<SpinCellRep> {
    let (spin, matrix) = identify_cell_lift(z)?;
    Ok(SpinCellRep { spin, matrix })
}

/// Representative of the open cell entered by every locally convex curve
/// right after leaving the identity: `ā = (-1, k)` in Spin₄.
pub fn open_convex_cell<const N: usize, S: Cover<N>>() -> Result<S> {
    let x = Mat::<N>::tridiagonal_skew(&vec![0.05; N - 1]);
    Ok(identify_cell_lift(S::exp_algebra(&x)?)?.0)
}

/// The lifted log-derivative `(π(√3 i + k)/2, π k/2)` of the model convex
/// curve in S³.
pub fn model_velocity() -> (ImaginaryQuaternion, ImaginaryQuaternion) {
    (
        ImaginaryQuaternion::new(PI * 3f64.sqrt() / 2.0, 0.0, PI / 2.0),
        ImaginaryQuaternion::new(0.0, 0.0, PI / 2.0),
    )
}

/// Taylor series of `exp(m)`; used for small `m`, where every entry keeps
/// its relative accuracy.
fn taylor_exp(m: &Mat4) -> Mat4 {
    let mut sum = Mat4::identity();
    let mut term = Mat4::identity();
    for k in 1..40 {
        term = (term * *m).scaled(1.0 / k as f64);
        sum = sum + term;
        if term.max_abs() == 0.0 {
            break;
        }
    }
    sum
}

/// Cell of `rep · exp(sign · h · X)`.
///
/// The classification is carried out on a path inside that cell. The
/// matrix `P exp(±hΛ)` is conjugated by `D_s = diag(1, 1/s, 1/s², 1/s³)`:
/// `P D_s E D_s⁻¹ = (P D_s P⁻¹) P E D_s⁻¹` stays in the cell, and at `s = h`
/// its subdiagonal entries are of order one, so the endpoint can be
/// classified in floating point even when `h` is tiny.
fn chop_at(rep: &SpinCellRep, sign: f64, h: f64) -> Result<SpinCellRep> {
    let (xl, xr) = model_velocity();
    let t = sign * h;
    let start = rep.spin.mul_normalized(SpinPair::exp(xl.scale(t), xr.scale(t)));
    let e = taylor_exp(&dpi4(xl, xr).scaled(t));
    let p = rep.matrix.to_matrix();
    let ln_h = h.ln();
    let path = |u: f64| {
        let ln_s = u * ln_h;
        let scaled = Mat(std::array::from_fn(|i| {
            std::array::from_fn(|j| e[(i, j)] * ((j as f64 - i as f64) * ln_s).exp())
        }));
        gram_schmidt_qr(&(p * scaled)).map(|(f, _)| f)
    };
    let end = lift_continuous(&path, start, CHOP_PATH_STEPS)?;
    identify_cell_spin(end)
}

fn chop_spin(z: SpinPair, sign: f64) -> Result<SpinCellRep> {
    let rep = identify_cell_spin(z)?;
    let mut h = CHOP_INITIAL_STEP;
    let mut previous = chop_at(&rep, sign, h)?;
    loop {
        h *= 0.5;
        if h < CHOP_MIN_STEP {
            return Err(Error::NoStableCell { h });
        }
        let next = chop_at(&rep, sign, h)?;
        if next.same_as(&previous, 1e-9) {
            return Ok(next);
        }
        previous = next;
    }
}

/// Cell of `z · exp(±hX)` at a fixed step `h`, with `plus` choosing the sign.
pub fn chop_spin_at(z: SpinPair, plus: bool, h: f64) -> Result<SpinCellRep> {
    chop_at(&identify_cell_spin(z)?, if plus { 1.0 } else { -1.0 }, h)
}

/// The open cell a locally convex curve passes through just before
/// arriving at `z`.
pub fn chop_minus_spin(z: SpinPair) -> Result<SpinCellRep> {
    chop_spin(z, -1.0)
}

/// The open cell a locally convex curve enters just after leaving `z`.
pub fn chop_plus_spin(z: SpinPair) -> Result<SpinCellRep> {
    chop_spin(z, 1.0)
}

fn lift_of(m: &Mat4) -> SpinPair {
    spin4_from_matrix(m)
}

/// Lift of `TR` to Spin₄: `z ↦ j z⁻¹ j⁻¹` where `j` covers `J₊`.
pub fn tr_spin(z: SpinPair) -> SpinPair {
    let j = lift_of(&jplus::<4>());
    j.mul_normalized(z.inverse()).mul_normalized(j.inverse())
}

/// Lift of `AD` to Spin₄: `z ↦ a⁻¹ z a` where `a` covers `A`.
pub fn ad_spin(z: SpinPair) -> SpinPair {
    let a = lift_of(&arnold_matrix::<4>().to_matrix());
    a.inverse().mul_normalized(z).mul_normalized(a)
}

/// Consistency of the spin lifts with the matrix maps.
pub fn tr_ad_residual(z: SpinPair) -> f64 {
    let q = pi4(z);
    pi4(tr_spin(z)).max_abs_diff(&tr_matrix(&q)).max(pi4(ad_spin(z)).max_abs_diff(&ad_matrix(&q)))
}
