//! Frenet frames, curvatures and logarithmic derivatives.
//!
//! For `γ : [0,1] → Sⁿ` the derivative matrix `(γ, γ′, …, γ⁽ⁿ⁾)` factors as
//! `F R` with `F ∈ SO(n+1)` and `R` upper triangular. The diagonal of `R`
//! is `(1, v, v²κ)` on S² and `(1, v, v²κ, v³κτ)` on S³, where `v = |γ′|`,
//! and the logarithmic derivative `Fᵀ F′` is tridiagonal with subdiagonal
//! `(v, vκ)` resp. `(v, vκ, vτ)`.

use super::{uniform_grid, Curve};
use crate::algebra::lift::{lift_continuous, Cover};
use crate::algebra::matrix::Mat;
use crate::algebra::qr::gram_schmidt_complete;
use crate::error::{Error, Result};

/// Default number of grid intervals for sampled frame computations.
pub const DEFAULT_GRID: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetSample<const N: usize> {
    pub t: f64,
    pub frame: Mat<N>,
    pub speed: f64,
    /// Geodesic curvature; on S² its sign records the side the curve turns to.
    pub kappa: f64,
    /// Geodesic torsion, only on S³.
    pub tau: Option<f64>,
    r: Mat<N>,
}

impl<const N: usize> FrenetSample<N> {
    /// Upper triangular factor of the derivative matrix.
    pub fn r(&self) -> &Mat<N> {
        &self.r
    }

    /// `det(γ, γ′, …, γ⁽ⁿ⁾)`.
    pub fn determinant(&self) -> f64 {
        (0..N).map(|i| self.r[(i, i)]).product()
    }

    /// The logarithmic derivative at this sample.
    pub fn log_derivative(&self) -> LogDerivative {
        let c = (1..N).map(|i| self.r[(i, i)] / self.r[(i - 1, i - 1)]).collect();
        LogDerivative { t: self.t, c }
    }
}

/// Subdiagonal `c₁, …, c_n` of the tridiagonal skew-symmetric `Λ = Fᵀ F′`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogDerivative {
    pub t: f64,
    pub c: Vec<f64>,
}

impl LogDerivative {
    pub fn to_matrix<const N: usize>(&self) -> Mat<N> {
        Mat::tridiagonal_skew(&self.c)
    }
}

/// Frenet frame, speed, curvature and (on S³) torsion at `t`.
pub fn frenet<const N: usize>(curve: &Curve<N>, t: f64) -> Result<FrenetSample<N>> {
    let m = curve.jet(t).derivative_matrix();
    let (frame, r) = gram_schmidt_complete(&m).map_err(|e| match e {
        Error::SingularInput { .. } => Error::NotGeneric { t },
        other => other,
    })?;
    let speed = r[(1, 1)];
    let kappa = r[(2, 2)] / (speed * speed);
    let tau = (N == 4).then(|| r[(3, 3)] / (speed * speed * speed * kappa));
    Ok(FrenetSample { t, frame, speed, kappa, tau, r })
}

pub fn log_derivative<const N: usize>(curve: &Curve<N>, t: f64) -> Result<LogDerivative> {
    Ok(frenet(curve, t)?.log_derivative())
}

/// Outcome of a pointwise predicate checked on a grid: the smallest value
/// of the tested quantity and where it occurs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredicateReport {
    pub holds: bool,
    pub margin: f64,
    pub witness: f64,
}

fn min_over_grid(steps: usize, f: impl Fn(f64) -> f64) -> (f64, f64) {
    uniform_grid(steps).map(|t| (f(t), t)).fold((f64::INFINITY, 0.0), |a, b| if b.0 < a.0 { b } else { a })
}

/// Threshold below which determinants count as vanishing.
pub const PREDICATE_MARGIN: f64 = 1e-9;

/// `det(γ, γ′, …, γ⁽ⁿ⁾) > 0` on `steps + 1` grid points.
pub fn is_locally_convex<const N: usize>(curve: &Curve<N>, steps: usize) -> PredicateReport {
    let (margin, witness) = min_over_grid(steps, |t| curve.jet(t).derivative_matrix().det());
    PredicateReport { holds: margin > PREDICATE_MARGIN, margin, witness }
}

/// `γ, …, γ⁽ⁿ⁻¹⁾` independent on `steps + 1` grid points; the margin is the
/// Gram volume `v · v²|κ| ⋯` of those columns.
pub fn is_generic<const N: usize>(curve: &Curve<N>, steps: usize) -> PredicateReport {
    let (margin, witness) = min_over_grid(steps, |t| match frenet(curve, t) {
        Ok(s) => (0..N - 1).map(|i| s.r[(i, i)].abs()).product(),
        Err(_) => 0.0,
    });
    PredicateReport { holds: margin > PREDICATE_MARGIN, margin, witness }
}

/// Frenet samples on the uniform grid with `steps` intervals.
pub fn frenet_path<const N: usize>(curve: &Curve<N>, steps: usize) -> Result<Vec<FrenetSample<N>>> {
    uniform_grid(steps).map(|t| frenet(curve, t)).collect()
}

/// Lift of the Frenet frame on the uniform grid, starting at the identity
/// spin. The frame at `t = 0` must be the identity. Between grid points the
/// lift refines wherever the frame turns quickly.
pub fn lifted_frenet_path<const N: usize, S: Cover<N>>(curve: &Curve<N>, steps: usize) -> Result<Vec<S>> {
    let f0 = frenet(curve, 0.0)?.frame;
    let residual = f0.max_abs_diff(&Mat::identity());
    if residual > 1e-8 {
        return Err(Error::InvalidInput(format!("initial Frenet frame is not the identity (residual {residual:e})")));
    }
    let mut out = Vec::with_capacity(steps + 1);
    let mut current = S::identity();
    out.push(current);
    let dt = 1.0 / steps as f64;
    for k in 0..steps {
        let t0 = k as f64 * dt;
        let path = move |s: f64| frenet(curve, t0 + s * dt).map(|f| f.frame);
        current = lift_continuous(&path, current, 1)?;
        out.push(current);
    }
    Ok(out)
}

/// Final lifted Frenet frame.
pub fn lifted_endpoint<const N: usize, S: Cover<N>>(curve: &Curve<N>, steps: usize) -> Result<S> {
    Ok(*lifted_frenet_path::<N, S>(curve, steps)?.last().expect("grid is nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::examples::{circle_sigma, ExampleFamily};

    #[test]
    fn sigma_frame_and_curvature() {
        let c = std::f64::consts::PI;
        let sigma = circle_sigma(c).unwrap();
        let s0 = frenet(&sigma, 0.0).unwrap();
        assert!(s0.frame.max_abs_diff(&Mat::identity()) < 1e-15);
        for t in [0.1, 0.5, 0.77] {
            let s = frenet(&sigma, t).unwrap();
            assert!((s.kappa - 3f64.sqrt()).abs() < 1e-12);
            assert!((s.speed - c).abs() < 1e-12);
        }
    }

    #[test]
    fn sigma_triangular_factor() {
        let c = 2.5;
        let rho = (c / std::f64::consts::TAU).asin();
        let s = frenet(&circle_sigma(c).unwrap(), 0.0).unwrap();
        let expected = Mat::from_rows([[1.0, 0.0, -c * c], [0.0, c, 0.0], [0.0, 0.0, c * c / rho.tan()]]);
        assert!(s.r().max_abs_diff(&expected) < 1e-12);
        assert!(s.frame.max_abs_diff(&Mat::identity()) < 1e-15);
    }

    #[test]
    fn log_derivative_matches_finite_differences() {
        let curve = ExampleFamily::Two.curve(1);
        let t = 0.37;
        let eps = 1e-5;
        let f = frenet(&curve, t).unwrap().frame;
        let fp = frenet(&curve, t + eps).unwrap().frame;
        let fm = frenet(&curve, t - eps).unwrap().frame;
        let df = (fp - fm).scaled(0.5 / eps);
        let fd = f.transpose() * df;
        let closed: Mat<4> = log_derivative(&curve, t).unwrap().to_matrix();
        assert!(fd.max_abs_diff(&closed) < 1e-5);
    }

    #[test]
    fn meridian_is_generic_but_not_convex() {
        let m = circle_sigma(2.0 * std::f64::consts::PI).unwrap();
        assert!(is_generic(&m, 64).holds);
        assert!(!is_locally_convex(&m, 64).holds);
        assert!(is_locally_convex(&ExampleFamily::One.curve(1), 64).holds);
    }
}
