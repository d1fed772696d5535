//! Curves reconstructed from integrated frame grids.
//!
//! Between grid points the frame is continued by the same midpoint rule
//! that produced the grid, `Γ(t_k + s) = Γ_k exp(sΛ(t_k + s/2))`, so the
//! curve passes through every node exactly. Derivatives come from
//! `Γ′ = ΓΛ`: `γ′ = ΓΛe₁`, `γ″ = Γ(Λ² + Λ′)e₁` and
//! `γ‴ = Γ(Λ³ + 2ΛΛ′ + Λ′Λ + Λ″)e₁`.

use super::coefficients::{CoefficientPath, UniformCubic};
use super::{integrate_coefficients, HolonomicGrid, DEFAULT_STEPS};
use crate::algebra::lift::{lift_path, Cover, Dim, SpinCover, SpinOf};
use crate::algebra::matrix::Mat;
use crate::curves::{Curve, Jet};
use crate::error::{Error, Result};
use std::sync::Arc;

/// A Jacobian curve together with the spin grid it was integrated on.
#[derive(Debug, Clone)]
pub struct JacobianSolution<const N: usize>
where
    Dim<N>: SpinCover<N>,
{
    pub curve: Curve<N>,
    pub grid: HolonomicGrid<N, SpinOf<N>>,
}

impl<const N: usize> JacobianSolution<N>
where
    Dim<N>: SpinCover<N>,
{
    /// The lifted final frame.
    pub fn endpoint(&self) -> SpinOf<N> {
        self.grid.endpoint()
    }
}

fn first_column<const N: usize>(m: &Mat<N>) -> [f64; N] {
    m.column(0)
}

/// The curve `t ↦ Γ(t)e₁` through the grid, with `lambda(t) = (Λ, Λ′, Λ″)`.
/// `lambda` must agree with the log-derivatives the grid was built from at
/// the step midpoints.
pub fn curve_from_grid<const N: usize, S: Cover<N>>(
    grid: HolonomicGrid<N, S>,
    lambda: impl Fn(f64) -> [Mat<N>; 3] + Send + Sync + 'static,
    label: impl Into<String>,
) -> Curve<N> {
    let grid = Arc::new(grid);
    Curve::new(label, move |t| {
        let steps = grid.steps();
        let h = grid.step_size();
        let k = ((t / h).floor().max(0.0) as usize).min(steps - 1);
        let s = t - grid.times[k];
        let l_mid = lambda(grid.times[k] + 0.5 * s)[0];
        let step = S::exp_algebra(&l_mid.scaled(s)).expect("tridiagonal log-derivatives are skew");
        let frame = grid.spins[k].compose(&step).project();
        let [l, l1, l2] = lambda(t);
        let l_sq = l * l;
        let d2 = l_sq + l1;
        let d3 = l_sq * l + (l * l1).scaled(2.0) + l1 * l + l2;
        Jet {
            pos: first_column(&frame),
            d1: first_column(&(frame * l)),
            d2: first_column(&(frame * d2)),
            d3: first_column(&(frame * d3)),
        }
    })
}

/// The curve `γ(t) = Γ(t)e₁` of a grid of frames on the uniform grid
/// `k / (len - 1)`. The log-derivative on each step is read off the lifted
/// frames and interpolated cubically between step midpoints.
pub fn curve_from_jacobian<const N: usize>(frames: &[Mat<N>]) -> Result<Curve<N>>
where
    Dim<N>: SpinCover<N>,
{
    if frames.len() < 2 {
        return Err(Error::InvalidInput("a frame grid needs at least two frames".into()));
    }
    if let Some(k) = frames.iter().position(|f| !f.is_special_orthogonal(1e-8)) {
        return Err(Error::InvalidInput(format!("frame {k} is not special orthogonal")));
    }
    let spins = lift_path(frames, <SpinOf<N>>::preimage(&frames[0]))?;
    let steps = frames.len() - 1;
    let h = 1.0 / steps as f64;
    let lambdas: Vec<Mat<N>> =
        spins.windows(2).map(|w| w[0].inverse().compose(&w[1]).log_algebra().scaled(1.0 / h)).collect();
    let flat: Vec<Vec<f64>> = lambdas.iter().map(|m| m.0.iter().flatten().copied().collect()).collect();
    let spline = UniformCubic::new(0.5 * h, h, flat)?;
    let unflatten = |v: &[f64]| Mat::<N>(std::array::from_fn(|i| std::array::from_fn(|j| v[i * N + j])));
    let lambda = move |t: f64| spline.eval(t).map(|v| unflatten(&v));
    let times = (0..=steps).map(|k| k as f64 * h).collect();
    Ok(curve_from_grid(HolonomicGrid { times, spins, lambdas }, lambda, "jacobian"))
}

fn solve<const N: usize>(coeffs: &CoefficientPath, steps: usize, quasi: bool) -> Result<JacobianSolution<N>>
where
    Dim<N>: SpinCover<N>,
{
    let grid = integrate_coefficients::<N>(coeffs, steps, <SpinOf<N>>::identity(), quasi)?;
    let path = coeffs.clone();
    let curve = curve_from_grid(grid.clone(), move |t| path.lambda_jet::<N>(t), "solution");
    Ok(JacobianSolution { curve, grid })
}

/// The unique locally convex curve with Frenet frame `I` at `t = 0` whose
/// logarithmic derivative has subdiagonal `coeffs`. `steps` defaults to
/// [`DEFAULT_STEPS`] when zero.
pub fn solve_unique_curve<const N: usize>(coeffs: &CoefficientPath, steps: usize) -> Result<JacobianSolution<N>>
where
    Dim<N>: SpinCover<N>,
{
    solve(coeffs, if steps == 0 { DEFAULT_STEPS } else { steps }, false)
}

/// As [`solve_unique_curve`] for quasi-Jacobian coefficients, where the last
/// coefficient may take either sign.
pub fn solve_quasi_curve<const N: usize>(coeffs: &CoefficientPath, steps: usize) -> Result<JacobianSolution<N>>
where
    Dim<N>: SpinCover<N>,
{
    solve(coeffs, if steps == 0 { DEFAULT_STEPS } else { steps }, true)
}
