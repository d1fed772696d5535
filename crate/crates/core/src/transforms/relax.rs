//! Relaxation-reflection of closed curves on S² and the pairs it produces.

use crate::algebra::lift::Cover;
use crate::algebra::matrix::{Mat, Mat4};
use crate::algebra::quaternion::{quat_exp, ImaginaryQuaternion, SpinPair, UnitQuaternion};
use crate::curves::{frenet, lifted_endpoint, uniform_grid, Curve3, DEFAULT_GRID};
use crate::decompose::CurvePair;
use crate::error::{Error, Result};
use crate::integrate::{solve_quasi_curve, CoefficientPath, JacobianSolution, DEFAULT_STEPS};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

/// Width of the transition between the two relaxation levels.
pub const BLEND_WIDTH: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RRParams {
    pub eps: f64,
    pub delta: f64,
}

impl RRParams {
    pub fn new(eps: f64, delta: f64) -> Result<Self> {
        let p = RRParams { eps, delta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let RRParams { eps, delta } = *self;
        if !(eps > 0.0 && delta > 0.0) {
            return Err(Error::InvalidInput(format!("ε and δ must be positive, got ({eps}, {delta})")));
        }
        if eps + BLEND_WIDTH >= 0.5 {
            return Err(Error::InvalidInput(format!("ε = {eps} leaves no middle interval")));
        }
        if delta * delta * eps * eps >= delta {
            return Err(Error::InvalidInput("δ²ε² must be smaller than δ".into()));
        }
        Ok(())
    }

    /// The amount `κ` is lowered by at `t`: `δ` on `(0, ε) ∪ (1 − ε, 1)` and
    /// `δ²ε²` on `(ε, 1 − ε)`, blended over [`BLEND_WIDTH`] around `ε` and
    /// `1 − ε`.
    pub fn relaxation(&self, t: f64) -> f64 {
        let RRParams { eps, delta } = *self;
        let width = BLEND_WIDTH.min(0.5 * eps);
        let s = ((t.min(1.0 - t) - eps) / width + 0.5).clamp(0.0, 1.0);
        let step = s * s * s * (10.0 + s * (6.0 * s - 15.0));
        let small = delta * delta * eps * eps;
        delta + (small - delta) * step
    }
}

/// `RR_{ε,δ}γ`: the curve with the speed of `γ` and curvature
/// `-(κ_γ − relaxation)`, integrated from the identity frame.
pub fn relax_reflect(curve: &Curve3, params: RRParams) -> Result<JacobianSolution<3>> {
    params.validate()?;
    let end = frenet(curve, 1.0)?.frame;
    let gap = end.max_abs_diff(&Mat::identity());
    if gap > 1e-6 {
        return Err(Error::InvalidInput(format!("curve is not closed with identity frame (gap {gap:e})")));
    }
    for t in uniform_grid(DEFAULT_STEPS) {
        let kappa = frenet(curve, t)?.kappa;
        if kappa - params.relaxation(t) <= 0.0 {
            return Err(Error::CurvatureUnderflow { t, kappa });
        }
    }
    let g = curve.clone();
    let coeffs = CoefficientPath::from_fn(2, move |t| match frenet(&g, t) {
        Ok(s) => vec![s.speed, -s.speed * (s.kappa - params.relaxation(t))],
        Err(_) => vec![f64::NAN; 2],
    });
    let mut sol = solve_quasi_curve::<3>(&coeffs, DEFAULT_STEPS)?;
    sol.curve = sol.curve.with_label(format!("RR({})", curve.label()));
    Ok(sol)
}

/// `γ̂ = (γ, RR_{ε,δ}γ)`, ready to be fused into a curve on S³.
pub fn hat_pair(curve: &Curve3, params: RRParams) -> Result<CurvePair> {
    let rr = relax_reflect(curve, params)?;
    let left_end: UnitQuaternion = lifted_endpoint(curve, DEFAULT_GRID)?;
    CurvePair::with_endpoints(curve.clone(), rr.curve.clone(), left_end, rr.endpoint(), DEFAULT_GRID)
}

/// The unit `h_r = cos δ (−i + k)/√2 + sin δ (i + k)/√2` of the model right
/// part.
pub fn model_axis(delta: f64) -> ImaginaryQuaternion {
    let (s, c) = delta.sin_cos();
    ImaginaryQuaternion::new((s - c) * FRAC_1_SQRT_2, 0.0, (s + c) * FRAC_1_SQRT_2)
}

/// `Π₄(1, exp(−ε h_r))`, the final frame of the model hat pair.
pub fn model_frame(eps: f64, delta: f64) -> Mat4 {
    let right = quat_exp(model_axis(delta).scale(-eps));
    SpinPair::new(UnitQuaternion::ONE, right).project()
}
