//! Splitting a curve in S³ into a pair of curves in S² and fusing such a
//! pair back.
//!
//! If the lifted Frenet frame of `γ` has logarithmic derivative
//! `(b_l i + d k, b_r i + d k)` then `b_l - b_r = v`, `2d = vκ` and
//! `b_l + b_r = vτ`. The left and right parts are the curves in S² whose
//! lifted frames solve `z′ = z(b i + d k)` with `b = b_l` resp. `b = b_r`;
//! both have speed `2d` and curvatures `b_l/d`, `b_r/d`.

use crate::algebra::quaternion::{SpinPair, UnitQuaternion};
use crate::curves::{frenet, uniform_grid, Curve3, Curve4, DEFAULT_GRID};
use crate::error::{Error, Result};
use crate::integrate::{
    curve_from_grid, integrate_holonomic_pair, integrate_holonomic_single, pair_lambda, single_lambda, CoefficientPath,
    PairGrid, QuaternionGrid, DEFAULT_STEPS, POSITIVITY_MARGIN,
};
use serde::{Deserialize, Serialize};

/// Relative tolerance for the equal-speed condition on a pair.
pub const SPEED_TOL: f64 = 1e-8;

/// `(b_l, b_r, d)` sampled on the uniform grid `grid`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairData {
    pub grid: Vec<f64>,
    pub b_l: Vec<f64>,
    pub b_r: Vec<f64>,
    pub d: Vec<f64>,
}

impl PairData {
    fn from_fn(samples: usize, mut f: impl FnMut(f64) -> Result<[f64; 3]>) -> Result<Self> {
        let mut data = PairData { grid: Vec::new(), b_l: Vec::new(), b_r: Vec::new(), d: Vec::new() };
        for t in uniform_grid(samples) {
            let [bl, br, d] = f(t)?;
            data.grid.push(t);
            data.b_l.push(bl);
            data.b_r.push(br);
            data.d.push(d);
        }
        Ok(data)
    }

    fn path(&self, rows: &[&[f64]]) -> Result<CoefficientPath> {
        CoefficientPath::cubic((0..self.grid.len()).map(|k| rows.iter().map(|r| r[k]).collect()).collect())
    }

    /// Cubic interpolant of `(b_l, b_r, d)`.
    pub fn interpolant(&self) -> Result<CoefficientPath> {
        self.path(&[&self.b_l, &self.b_r, &self.d])
    }

    /// Checks `d > 0`, `b_l > b_r` and, when `convex`, `b_l > |b_r|` on the
    /// grid, reporting the first failing time.
    pub fn check(&self, convex: bool) -> Result<()> {
        for (k, &t) in self.grid.iter().enumerate() {
            let (bl, br, d) = (self.b_l[k], self.b_r[k], self.d[k]);
            if !(d > POSITIVITY_MARGIN) {
                return Err(Error::PairConditionViolated { which: "d > 0", t });
            }
            if !(bl - br > POSITIVITY_MARGIN) {
                return Err(Error::PairConditionViolated { which: "kappa_l > kappa_r", t });
            }
            if convex && !(bl - br.abs() > POSITIVITY_MARGIN) {
                return Err(Error::PairConditionViolated { which: "kappa_l > |kappa_r|", t });
            }
        }
        Ok(())
    }
}

/// The pair data of `γ` on `samples + 1` uniform points.
pub fn pair_data(curve: &Curve4, samples: usize) -> Result<PairData> {
    PairData::from_fn(samples, |t| {
        let c = frenet(curve, t)?.log_derivative().c;
        Ok([0.5 * (c[0] + c[2]), 0.5 * (c[2] - c[0]), 0.5 * c[1]])
    })
}

/// Left and right parts of a curve in S³.
#[derive(Debug, Clone)]
pub struct CurvePair {
    pub left: Curve3,
    pub right: Curve3,
    pub left_end: UnitQuaternion,
    pub right_end: UnitQuaternion,
    /// Pair data read off the two curves: `d` is half the mean speed and
    /// `b = κ d` on each side.
    pub data: PairData,
    /// Largest relative speed mismatch and where it occurs.
    pub speed_residual: (f64, f64),
}

impl CurvePair {
    /// Pairs two curves in S² whose Frenet frames start at `I`. The endpoint
    /// spins are obtained by lifting the Frenet frames.
    pub fn new(left: Curve3, right: Curve3) -> Result<Self> {
        use crate::curves::lifted_endpoint;
        let left_end = lifted_endpoint::<3, UnitQuaternion>(&left, DEFAULT_GRID)?;
        let right_end = lifted_endpoint::<3, UnitQuaternion>(&right, DEFAULT_GRID)?;
        Self::with_endpoints(left, right, left_end, right_end, DEFAULT_GRID)
    }

    pub(crate) fn with_endpoints(
        left: Curve3,
        right: Curve3,
        left_end: UnitQuaternion,
        right_end: UnitQuaternion,
        samples: usize,
    ) -> Result<Self> {
        let mut speed_residual = (0.0, 0.0);
        let data = PairData::from_fn(samples, |t| {
            let (l, r) = (frenet(&left, t)?, frenet(&right, t)?);
            let rel = (l.speed - r.speed).abs() / l.speed.max(r.speed);
            if rel > speed_residual.0 {
                speed_residual = (rel, t);
            }
            let d = 0.25 * (l.speed + r.speed);
            Ok([l.kappa * d, r.kappa * d, d])
        })?;
        Ok(CurvePair { left, right, left_end, right_end, data, speed_residual })
    }

    pub fn endpoint(&self) -> SpinPair {
        SpinPair::new(self.left_end, self.right_end)
    }

    /// Checks equal speeds (relative `speed_tol`), `κ_l > κ_r` and, when
    /// `convex`, `κ_l > |κ_r|` on the sample grid.
    pub fn check(&self, convex: bool, speed_tol: f64) -> Result<()> {
        if self.speed_residual.0 > speed_tol {
            return Err(Error::PairConditionViolated { which: "equal speeds", t: self.speed_residual.1 });
        }
        self.data.check(convex)
    }
}

fn single_part(path: CoefficientPath, steps: usize, label: String) -> Result<(Curve3, QuaternionGrid)> {
    let b = |t: f64| path.eval(t)[0];
    let d = |t: f64| path.eval(t)[1];
    let grid = integrate_holonomic_single(b, d, steps)?;
    let jet = move |t: f64| path.jet(t).map(|v| single_lambda(v[0], v[1]));
    Ok((curve_from_grid(grid.clone(), jet, label), grid))
}

/// Splits a generic curve in S³ into its left and right parts, sampling the
/// pair data on `samples + 1` points and integrating with `steps` steps.
pub fn split_with(curve: &Curve4, samples: usize, steps: usize) -> Result<CurvePair> {
    let data = pair_data(curve, samples)?;
    let (left, left_grid) = single_part(data.path(&[&data.b_l, &data.d])?, steps, format!("{}_l", curve.label()))?;
    let (right, right_grid) = single_part(data.path(&[&data.b_r, &data.d])?, steps, format!("{}_r", curve.label()))?;
    Ok(CurvePair {
        left,
        right,
        left_end: left_grid.endpoint(),
        right_end: right_grid.endpoint(),
        data,
        speed_residual: (0.0, 0.0),
    })
}

/// [`split_with`] on the default grids.
pub fn split(curve: &Curve4) -> Result<CurvePair> {
    split_with(curve, DEFAULT_GRID, DEFAULT_STEPS)
}

/// A curve in S³ rebuilt from pair data, with its spin grid.
#[derive(Debug, Clone)]
pub struct FusedCurve {
    pub curve: Curve4,
    pub grid: PairGrid,
}

impl FusedCurve {
    pub fn endpoint(&self) -> SpinPair {
        self.grid.endpoint()
    }
}

/// Rebuilds a curve in S³ from pair data.
pub fn fuse_data(data: &PairData, steps: usize, convex: bool) -> Result<FusedCurve> {
    data.check(convex)?;
    let path = data.interpolant()?;
    let eval = |t: f64| path.eval(t);
    let grid = integrate_holonomic_pair(|t| eval(t)[0], |t| eval(t)[1], |t| eval(t)[2], steps)?;
    let jet_path = path.clone();
    let jet = move |t: f64| jet_path.jet(t).map(|v| pair_lambda(v[0], v[1], v[2]));
    Ok(FusedCurve { curve: curve_from_grid(grid.clone(), jet, "fused"), grid })
}

/// Fuses a pair satisfying equal speeds and `κ_l > κ_r` (and `κ_l > |κ_r|`
/// when `convex`) into a curve in S³.
pub fn fuse(pair: &CurvePair, convex: bool) -> Result<FusedCurve> {
    pair.check(convex, SPEED_TOL)?;
    fuse_data(&pair.data, DEFAULT_STEPS, convex)
}
