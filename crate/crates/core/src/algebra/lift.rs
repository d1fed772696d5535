//! Continuous lifting of paths in SO₃ / SO₄ to the spin groups.

use super::cover::{dpi3, dpi4, exp_so3, exp_so4, pi3, pi4, so3_split, so4_split, spin3_from_matrix, spin4_from_matrix};
use super::matrix::Mat;
use super::quaternion::{quat_exp, quat_log, SpinPair, UnitQuaternion};
use crate::error::{Error, Result};

/// A consecutive pair of spins must have inner product above this value,
/// i.e. the frames must differ by less than a quarter turn.
pub const LIFT_MIN_INNER: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Adaptive lifting subdivides until consecutive spins are this close.
const ADAPTIVE_INNER: f64 = 0.98;
const MAX_DEPTH: usize = 48;

/// A double cover `S → SO(N)` together with the group operations the
/// lifting and integration code needs.
pub trait Cover<const N: usize>: Copy + std::fmt::Debug + Send + Sync + 'static {
    fn identity() -> Self;
    fn project(&self) -> Mat<N>;
    /// One of the two preimages of `m`.
    fn preimage(m: &Mat<N>) -> Self;
    fn negate(&self) -> Self;
    /// Inner product normalised to [-1, 1].
    fn inner(&self, other: &Self) -> f64;
    /// Group product, renormalised.
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// Spin exponential of a skew matrix.
    fn exp_algebra(m: &Mat<N>) -> Result<Self>;
    /// Matrix exponential of a skew matrix, computed through the cover.
    fn exp_matrix(m: &Mat<N>) -> Result<Mat<N>>;
    fn distance(&self, other: &Self) -> f64;
    /// Principal logarithm, as a skew matrix.
    fn log_algebra(&self) -> Mat<N>;
}

/// Marker tying a matrix dimension to its spin group.
pub struct Dim<const N: usize>;

pub trait SpinCover<const N: usize> {
    type Spin: Cover<N>;
}

impl SpinCover<3> for Dim<3> {
    type Spin = UnitQuaternion;
}

impl SpinCover<4> for Dim<4> {
    type Spin = SpinPair;
}

/// The spin group covering SO(N).
pub type SpinOf<const N: usize> = <Dim<N> as SpinCover<N>>::Spin;

impl Cover<3> for UnitQuaternion {
    fn identity() -> Self {
        UnitQuaternion::ONE
    }
    fn project(&self) -> Mat<3> {
        pi3(*self)
    }
    fn preimage(m: &Mat<3>) -> Self {
        spin3_from_matrix(m)
    }
    fn negate(&self) -> Self {
        -*self
    }
    fn inner(&self, other: &Self) -> f64 {
        self.dot(*other)
    }
    fn compose(&self, other: &Self) -> Self {
        self.mul_normalized(*other)
    }
    fn inverse(&self) -> Self {
        self.conj()
    }
    fn exp_algebra(m: &Mat<3>) -> Result<Self> {
        Ok(quat_exp(so3_split(m)?))
    }
    fn exp_matrix(m: &Mat<3>) -> Result<Mat<3>> {
        exp_so3(m)
    }
    fn distance(&self, other: &Self) -> f64 {
        UnitQuaternion::distance(*self, *other)
    }
    fn log_algebra(&self) -> Mat<3> {
        dpi3(quat_log(*self))
    }
}

impl Cover<4> for SpinPair {
    fn identity() -> Self {
        SpinPair::IDENTITY
    }
    fn project(&self) -> Mat<4> {
        pi4(*self)
    }
    fn preimage(m: &Mat<4>) -> Self {
        spin4_from_matrix(m)
    }
    fn negate(&self) -> Self {
        -*self
    }
    fn inner(&self, other: &Self) -> f64 {
        self.dot(*other)
    }
    fn compose(&self, other: &Self) -> Self {
        self.mul_normalized(*other)
    }
    fn inverse(&self) -> Self {
        SpinPair::inverse(*self)
    }
    fn exp_algebra(m: &Mat<4>) -> Result<Self> {
        let (hl, hr) = so4_split(m)?;
        Ok(SpinPair::exp(hl, hr))
    }
    fn exp_matrix(m: &Mat<4>) -> Result<Mat<4>> {
        exp_so4(m)
    }
    fn distance(&self, other: &Self) -> f64 {
        SpinPair::distance(*self, *other)
    }
    fn log_algebra(&self) -> Mat<4> {
        dpi4(quat_log(self.left), quat_log(self.right))
    }
}

/// Preimage of `next` on the sheet through `prev`, with the inner product
/// that decided it.
pub fn nearest_preimage<const N: usize, S: Cover<N>>(prev: &S, next: &Mat<N>) -> (S, f64) {
    let w = S::preimage(next);
    let ip = w.inner(prev);
    if ip < 0.0 {
        (w.negate(), -ip)
    } else {
        (w, ip)
    }
}

/// Lifts a sampled path starting from `start`, which must lie over the
/// first frame.
pub fn lift_path<const N: usize, S: Cover<N>>(frames: &[Mat<N>], start: S) -> Result<Vec<S>> {
    let mut out = Vec::with_capacity(frames.len());
    let Some(first) = frames.first() else { return Ok(out) };
    let residual = start.project().max_abs_diff(first);
    if residual > 1e-9 {
        return Err(Error::InvalidInput(format!("start spin does not cover the first frame (residual {residual:e})")));
    }
    out.push(start);
    for (index, frame) in frames.iter().enumerate().skip(1) {
        let (w, inner) = nearest_preimage(&out[index - 1], frame);
        if inner <= LIFT_MIN_INNER {
            return Err(Error::StepTooLarge { index, inner });
        }
        out.push(w);
    }
    Ok(out)
}

fn check_starts_at_identity<const N: usize>(frames: &[Mat<N>]) -> Result<()> {
    match frames.first() {
        Some(f) if f.max_abs_diff(&Mat::identity()) > 1e-9 => {
            Err(Error::InvalidInput("path must start at the identity".into()))
        }
        _ => Ok(()),
    }
}

/// Lifts a path in SO₃ that starts at the identity.
pub fn lift_path_so3(frames: &[Mat<3>]) -> Result<Vec<UnitQuaternion>> {
    check_starts_at_identity(frames)?;
    lift_path(frames, UnitQuaternion::ONE)
}

/// Lifts a path in SO₄ that starts at the identity.
pub fn lift_path_so4(frames: &[Mat<4>]) -> Result<Vec<SpinPair>> {
    check_starts_at_identity(frames)?;
    lift_path(frames, SpinPair::IDENTITY)
}

/// Lifts the continuous path `s ↦ path(s)`, `s ∈ [0, 1]`, starting from
/// `start`, subdividing wherever consecutive samples are far apart.
/// Returns the lift of `path(1)`. Refinement only sees the sample points, so
/// `initial_steps` must be fine enough that no segment turns by a full
/// period between them.
pub fn lift_continuous<const N: usize, S: Cover<N>>(
    path: &dyn Fn(f64) -> Result<Mat<N>>,
    start: S,
    initial_steps: usize,
) -> Result<S> {
    let mut current = start;
    let n = initial_steps.max(1);
    for k in 0..n {
        let (s0, s1) = (k as f64 / n as f64, (k + 1) as f64 / n as f64);
        current = lift_segment(path, current, s0, s1, 0)?;
    }
    Ok(current)
}

fn lift_segment<const N: usize, S: Cover<N>>(
    path: &dyn Fn(f64) -> Result<Mat<N>>,
    from: S,
    s0: f64,
    s1: f64,
    depth: usize,
) -> Result<S> {
    let (w, inner) = nearest_preimage(&from, &path(s1)?);
    if inner >= ADAPTIVE_INNER {
        return Ok(w);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::StepTooLarge { index: depth, inner });
    }
    let mid = 0.5 * (s0 + s1);
    let half = lift_segment(path, from, s0, mid, depth + 1)?;
    lift_segment(path, half, mid, s1, depth + 1)
}
