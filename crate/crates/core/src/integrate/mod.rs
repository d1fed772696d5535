//! Geometric integration of Jacobian curves `Γ′ = ΓΛ(t)` and of their
//! lifts to the spin groups.
//!
//! Every step is the exact group product `z_{k+1} = z_k · exp(hΛ(t_k + h/2))`
//! with the exponential taken in closed form on quaternions, so the frames
//! stay orthogonal to roundoff and the scheme is second order in `h`.

pub mod coefficients;
pub mod sampled;

pub use coefficients::{CoefficientPath, CoefficientSamples, UniformCubic, VectorJet, POSITIVITY_MARGIN};
pub use sampled::{curve_from_grid, curve_from_jacobian, solve_quasi_curve, solve_unique_curve, JacobianSolution};

use crate::algebra::cover::{dpi3, dpi4};
use crate::algebra::lift::{Cover, Dim, SpinCover, SpinOf};
use crate::algebra::matrix::{Mat, Mat3, Mat4};
use crate::algebra::quaternion::{ImaginaryQuaternion, SpinPair, UnitQuaternion};
use crate::error::{Error, Result};

/// Default number of integration steps on `[0, 1]`.
pub const DEFAULT_STEPS: usize = 4096;

/// Spins of an integrated curve on the uniform grid `t_k = k / steps`.
#[derive(Debug, Clone, PartialEq)]
pub struct HolonomicGrid<const N: usize, S> {
    pub times: Vec<f64>,
    pub spins: Vec<S>,
    /// `Λ(t_k + h/2)`, the log-derivative used on step `k`.
    pub lambdas: Vec<Mat<N>>,
}

pub type PairGrid = HolonomicGrid<4, SpinPair>;
pub type QuaternionGrid = HolonomicGrid<3, UnitQuaternion>;

impl<const N: usize, S: Cover<N>> HolonomicGrid<N, S> {
    pub fn steps(&self) -> usize {
        self.lambdas.len()
    }

    pub fn step_size(&self) -> f64 {
        1.0 / self.steps() as f64
    }

    pub fn endpoint(&self) -> S {
        *self.spins.last().expect("grid is nonempty")
    }

    /// The projected frames `Π(z_k)`.
    pub fn frames(&self) -> Vec<Mat<N>> {
        self.spins.iter().map(|z| z.project()).collect()
    }

    /// Largest distance between consecutive spins.
    pub fn max_step_distance(&self) -> f64 {
        self.spins.windows(2).map(|w| w[0].distance(&w[1])).fold(0.0, f64::max)
    }
}

/// Integrates `z′ = z·Λ(t)` from `start` with the exponential midpoint rule.
pub fn integrate_spin<const N: usize, S: Cover<N>>(
    lambda: impl Fn(f64) -> Mat<N>,
    start: S,
    steps: usize,
) -> Result<HolonomicGrid<N, S>> {
    if steps == 0 {
        return Err(Error::InvalidInput("at least one integration step is required".into()));
    }
    let h = 1.0 / steps as f64;
    let mut times = Vec::with_capacity(steps + 1);
    let mut spins = Vec::with_capacity(steps + 1);
    let mut lambdas = Vec::with_capacity(steps);
    let mut z = start;
    times.push(0.0);
    spins.push(z);
    for k in 0..steps {
        let l = lambda((k as f64 + 0.5) * h);
        z = z.compose(&S::exp_algebra(&l.scaled(h))?);
        lambdas.push(l);
        times.push((k + 1) as f64 * h);
        spins.push(z);
    }
    Ok(HolonomicGrid { times, spins, lambdas })
}

/// Integrates the lift of the Jacobian curve of `coeffs` starting at `start`.
/// With `quasi` the last coefficient may take any sign.
pub fn integrate_coefficients<const N: usize>(
    coeffs: &CoefficientPath,
    steps: usize,
    start: SpinOf<N>,
    quasi: bool,
) -> Result<HolonomicGrid<N, SpinOf<N>>>
where
    Dim<N>: SpinCover<N>,
{
    if coeffs.dimension() + 1 != N {
        return Err(Error::InvalidInput(format!(
            "coefficient path has {} entries, expected {}",
            coeffs.dimension(),
            N - 1
        )));
    }
    coeffs.check_positive(steps, quasi)?;
    integrate_spin(|t| coeffs.lambda::<N>(t), start, steps)
}

/// Frames `Γ_k` of the Jacobian curve with `Γ(0) = I`.
pub fn integrate_jacobian<const N: usize>(coeffs: &CoefficientPath, steps: usize) -> Result<Vec<Mat<N>>>
where
    Dim<N>: SpinCover<N>,
{
    Ok(integrate_coefficients::<N>(coeffs, steps, <SpinOf<N>>::identity(), false)?.frames())
}

/// As [`integrate_jacobian`], allowing a last coefficient of either sign.
pub fn integrate_quasi_jacobian<const N: usize>(coeffs: &CoefficientPath, steps: usize) -> Result<Vec<Mat<N>>>
where
    Dim<N>: SpinCover<N>,
{
    Ok(integrate_coefficients::<N>(coeffs, steps, <SpinOf<N>>::identity(), true)?.frames())
}

fn check_holonomic(steps: usize, checks: &[(&'static str, &dyn Fn(f64) -> f64)]) -> Result<()> {
    for k in 0..=2 * steps {
        let t = k as f64 / (2 * steps) as f64;
        for &(which, margin) in checks {
            if !(margin(t) > POSITIVITY_MARGIN) {
                return Err(Error::ConditionViolated { which, t });
            }
        }
    }
    Ok(())
}

/// The log-derivative `(b_l i + d k, b_r i + d k)` pushed down to so₄.
pub fn pair_lambda(b_l: f64, b_r: f64, d: f64) -> Mat4 {
    dpi4(ImaginaryQuaternion::new(b_l, 0.0, d), ImaginaryQuaternion::new(b_r, 0.0, d))
}

/// The log-derivative `b i + d k` pushed down to so₃.
pub fn single_lambda(b: f64, d: f64) -> Mat3 {
    dpi3(ImaginaryQuaternion::new(b, 0.0, d))
}

/// Integrates the curve in Spin₄ with logarithmic derivative
/// `(b_l i + d k, b_r i + d k)` from `(1, 1)`.
pub fn integrate_holonomic_pair(
    b_l: impl Fn(f64) -> f64,
    b_r: impl Fn(f64) -> f64,
    d: impl Fn(f64) -> f64,
    steps: usize,
) -> Result<PairGrid> {
    check_holonomic(steps, &[("d > 0", &|t| d(t)), ("b_l > b_r", &|t| b_l(t) - b_r(t))])?;
    integrate_spin(|t| pair_lambda(b_l(t), b_r(t), d(t)), SpinPair::IDENTITY, steps)
}

/// Integrates the curve in S³ ⊂ ℍ with logarithmic derivative `b i + d k`
/// from `1`.
pub fn integrate_holonomic_single(b: impl Fn(f64) -> f64, d: impl Fn(f64) -> f64, steps: usize) -> Result<QuaternionGrid> {
    check_holonomic(steps, &[("d > 0", &|t| d(t))])?;
    integrate_spin(|t| single_lambda(b(t), d(t)), UnitQuaternion::ONE, steps)
}
