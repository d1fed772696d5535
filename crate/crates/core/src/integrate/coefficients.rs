//! Coefficient paths `t ↦ (c₁(t), …, c_n(t))`, the subdiagonals of
//! tridiagonal skew-symmetric logarithmic derivatives.

use crate::algebra::matrix::Mat;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Values below this margin count as non-positive.
pub const POSITIVITY_MARGIN: f64 = 1e-12;

/// Samples of a coefficient path on an increasing grid, interpolated
/// piecewise linearly. `c[i][k]` is `c_{i+1}(grid[k])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSamples {
    pub n: usize,
    pub grid: Vec<f64>,
    pub c: Vec<Vec<f64>>,
}

impl CoefficientSamples {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.c.len() != self.n {
            return Err(Error::InvalidInput(format!("expected {} coefficient rows, found {}", self.n, self.c.len())));
        }
        if self.grid.len() < 2 {
            return Err(Error::InvalidInput("coefficient grid needs at least two points".into()));
        }
        if self.grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput("coefficient grid must be strictly increasing".into()));
        }
        if let Some(i) = self.c.iter().position(|row| row.len() != self.grid.len()) {
            return Err(Error::InvalidInput(format!("row c{} has the wrong length", i + 1)));
        }
        if self.grid.iter().chain(self.c.iter().flatten()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("coefficient samples must be finite".into()));
        }
        Ok(())
    }
}

/// Value and first two derivatives of a vector-valued function.
pub type VectorJet = [Vec<f64>; 3];

/// Cubic interpolation through values on the uniform grid
/// `t₀ + k·dt`, using the four nodes around `t` (fewer when there are
/// fewer nodes).
#[derive(Debug, Clone, PartialEq)]
pub struct UniformCubic {
    t0: f64,
    dt: f64,
    nodes: Vec<Vec<f64>>,
}

impl UniformCubic {
    /// `nodes[k]` holds the components at `t₀ + k·dt`.
    pub fn new(t0: f64, dt: f64, nodes: Vec<Vec<f64>>) -> Result<Self> {
        if nodes.is_empty() || !(dt > 0.0) {
            return Err(Error::InvalidInput("cubic interpolation needs nodes and a positive spacing".into()));
        }
        let dim = nodes[0].len();
        if nodes.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidInput("cubic interpolation nodes differ in length".into()));
        }
        Ok(UniformCubic { t0, dt, nodes })
    }

    pub fn dimension(&self) -> usize {
        self.nodes[0].len()
    }

    pub fn eval(&self, t: f64) -> VectorJet {
        let count = self.nodes.len();
        let width = count.min(4);
        let x = (t - self.t0) / self.dt;
        let cell = (x.floor().max(0.0) as usize).min(count.saturating_sub(2));
        let j0 = cell.saturating_sub(1).min(count - width);
        let u = x - j0 as f64;
        // Newton forward form: Σ Δʲy₀ · u(u-1)…(u-j+1)/j!
        let basis = [
            [1.0, 0.0, 0.0],
            [u, 1.0, 0.0],
            [0.5 * (u * u - u), u - 0.5, 1.0],
            [(u * u * u - 3.0 * u * u + 2.0 * u) / 6.0, (3.0 * u * u - 6.0 * u + 2.0) / 6.0, u - 1.0],
        ];
        let dim = self.dimension();
        let mut out: VectorJet = [vec![0.0; dim], vec![0.0; dim], vec![0.0; dim]];
        for comp in 0..dim {
            let mut diffs: Vec<f64> = (0..width).map(|j| self.nodes[j0 + j][comp]).collect();
            for (order, b) in basis.iter().enumerate().take(width) {
                for (d, &w) in out.iter_mut().zip(b.iter()) {
                    d[comp] += w * diffs[0];
                }
                if order + 1 < width {
                    for j in 0..diffs.len() - 1 {
                        diffs[j] = diffs[j + 1] - diffs[j];
                    }
                    diffs.pop();
                }
            }
        }
        for v in &mut out[1] {
            *v /= self.dt;
        }
        for v in &mut out[2] {
            *v /= self.dt * self.dt;
        }
        out
    }
}

type CoefficientFn = dyn Fn(f64) -> Vec<f64> + Send + Sync;

#[derive(Clone)]
enum Repr {
    Constant(Vec<f64>),
    Closure(Arc<CoefficientFn>),
    Linear(CoefficientSamples),
    Cubic(UniformCubic),
}

/// A path of coefficients `c₁, …, c_n` on `[0, 1]`.
#[derive(Clone)]
pub struct CoefficientPath {
    n: usize,
    repr: Repr,
}

impl fmt::Debug for CoefficientPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.repr {
            Repr::Constant(_) => "constant",
            Repr::Closure(_) => "closure",
            Repr::Linear(_) => "piecewise-linear",
            Repr::Cubic(_) => "cubic",
        };
        f.debug_struct("CoefficientPath").field("n", &self.n).field("kind", &kind).finish()
    }
}

/// Step for the central differences used on closures.
const FD_STEP_1: f64 = 1e-5;
const FD_STEP_2: f64 = 1e-4;

impl CoefficientPath {
    pub fn constant(c: Vec<f64>) -> Self {
        CoefficientPath { n: c.len(), repr: Repr::Constant(c) }
    }

    /// A path given by a closure returning `n` values. Derivatives are taken
    /// by central differences, so `f` must be smooth slightly beyond `[0, 1]`.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> Vec<f64> + Send + Sync + 'static) -> Self {
        CoefficientPath { n, repr: Repr::Closure(Arc::new(f)) }
    }

    pub fn linear(samples: CoefficientSamples) -> Result<Self> {
        samples.validate()?;
        Ok(CoefficientPath { n: samples.n, repr: Repr::Linear(samples) })
    }

    /// Cubic interpolation of values on the uniform grid `k / (len - 1)`;
    /// `values[k]` holds `(c₁, …, c_n)` at the k-th node.
    pub fn cubic(values: Vec<Vec<f64>>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidInput("cubic coefficient path needs at least two nodes".into()));
        }
        let dt = 1.0 / (values.len() - 1) as f64;
        let spline = UniformCubic::new(0.0, dt, values)?;
        Ok(CoefficientPath { n: spline.dimension(), repr: Repr::Cubic(spline) })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        match &self.repr {
            Repr::Constant(c) => c.clone(),
            Repr::Closure(f) => f(t),
            Repr::Linear(s) => linear_jet(s, t)[0].clone(),
            Repr::Cubic(s) => s.eval(t)[0].clone(),
        }
    }

    /// `(c, c′, c″)` at `t`.
    pub fn jet(&self, t: f64) -> VectorJet {
        match &self.repr {
            Repr::Constant(c) => [c.clone(), vec![0.0; self.n], vec![0.0; self.n]],
            Repr::Closure(f) => {
                let c = f(t);
                let (p1, m1) = (f(t + FD_STEP_1), f(t - FD_STEP_1));
                let (p2, m2) = (f(t + FD_STEP_2), f(t - FD_STEP_2));
                let d1 = (0..self.n).map(|i| (p1[i] - m1[i]) / (2.0 * FD_STEP_1)).collect();
                let d2 = (0..self.n).map(|i| (p2[i] - 2.0 * c[i] + m2[i]) / (FD_STEP_2 * FD_STEP_2)).collect();
                [c, d1, d2]
            }
            Repr::Linear(s) => linear_jet(s, t),
            Repr::Cubic(s) => s.eval(t),
        }
    }

    /// The tridiagonal skew matrix with subdiagonal `c(t)`.
    pub fn lambda<const N: usize>(&self, t: f64) -> Mat<N> {
        Mat::tridiagonal_skew(&self.eval(t))
    }

    /// `(Λ, Λ′, Λ″)` at `t`.
    pub fn lambda_jet<const N: usize>(&self, t: f64) -> [Mat<N>; 3] {
        self.jet(t).map(|c| Mat::tridiagonal_skew(&c))
    }

    /// Samples on the uniform grid with `steps` intervals.
    pub fn to_samples(&self, steps: usize) -> CoefficientSamples {
        let grid: Vec<f64> = (0..=steps).map(|k| k as f64 / steps as f64).collect();
        let values: Vec<Vec<f64>> = grid.iter().map(|&t| self.eval(t)).collect();
        let c = (0..self.n).map(|i| values.iter().map(|v| v[i]).collect()).collect();
        CoefficientSamples { n: self.n, grid, c }
    }

    /// Checks positivity at the nodes and midpoints of the uniform grid:
    /// all of `c₁ … c_n` for a Jacobian path, `c₁ … c_{n-1}` when `quasi`.
    pub fn check_positive(&self, steps: usize, quasi: bool) -> Result<()> {
        let checked = if quasi { self.n - 1 } else { self.n };
        for k in 0..=2 * steps {
            let t = k as f64 / (2 * steps) as f64;
            let c = self.eval(t);
            if c.len() != self.n {
                return Err(Error::InvalidInput(format!("coefficient path returned {} values, expected {}", c.len(), self.n)));
            }
            for (i, &value) in c.iter().enumerate().take(checked) {
                if !(value > POSITIVITY_MARGIN) {
                    return Err(Error::NonPositiveCoefficient { index: i + 1, t, value });
                }
            }
        }
        Ok(())
    }
}

fn linear_jet(s: &CoefficientSamples, t: f64) -> VectorJet {
    let last = s.grid.len() - 1;
    let k = s.grid.partition_point(|&g| g <= t).clamp(1, last) - 1;
    let (t0, t1) = (s.grid[k], s.grid[k + 1]);
    let w = (t - t0) / (t1 - t0);
    let value = s.c.iter().map(|row| row[k] + w * (row[k + 1] - row[k])).collect();
    let slope = s.c.iter().map(|row| (row[k + 1] - row[k]) / (t1 - t0)).collect();
    [value, slope, vec![0.0; s.n]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_reproduces_cubics() {
        let f = |t: f64| vec![2.0 * t * t * t - t + 0.5, 3.0];
        let nodes: Vec<Vec<f64>> = (0..=10).map(|k| f(k as f64 / 10.0)).collect();
        let p = CoefficientPath::cubic(nodes).unwrap();
        for t in [0.0, 0.03, 0.47, 0.5, 0.96, 1.0] {
            let [v, d1, d2] = p.jet(t);
            assert!((v[0] - f(t)[0]).abs() < 1e-13);
            assert!((d1[0] - (6.0 * t * t - 1.0)).abs() < 1e-11);
            assert!((d2[0] - 12.0 * t).abs() < 1e-9);
            assert!((v[1] - 3.0).abs() < 1e-14 && d1[1].abs() < 1e-12);
        }
    }

    #[test]
    fn short_cubic_falls_back_to_lower_order() {
        let spline = UniformCubic::new(0.5, 1.0, vec![vec![1.0], vec![3.0]]).unwrap();
        let [v, d1, d2] = spline.eval(1.0);
        assert_eq!((v[0], d1[0], d2[0]), (2.0, 2.0, 0.0));
    }

    #[test]
    fn linear_interpolation() {
        let s = CoefficientSamples { n: 1, grid: vec![0.0, 0.5, 1.0], c: vec![vec![1.0, 2.0, 0.0]] };
        let p = CoefficientPath::linear(s).unwrap();
        assert_eq!(p.eval(0.25), vec![1.5]);
        assert_eq!(p.jet(0.75)[1], vec![-4.0]);
        assert_eq!(p.eval(1.0), vec![0.0]);
    }

    #[test]
    fn closure_derivatives() {
        let p = CoefficientPath::from_fn(1, |t| vec![t.sin()]);
        let [_, d1, d2] = p.jet(0.3);
        assert!((d1[0] - 0.3f64.cos()).abs() < 1e-9);
        assert!((d2[0] + 0.3f64.sin()).abs() < 1e-6);
    }

    #[test]
    fn positivity() {
        let zero = CoefficientPath::constant(vec![0.0, 0.0, 0.0]);
        assert!(matches!(zero.check_positive(8, false), Err(Error::NonPositiveCoefficient { index: 1, .. })));
        let quasi = CoefficientPath::constant(vec![1.0, 1.0, -1.0]);
        assert!(quasi.check_positive(8, true).is_ok());
        assert!(matches!(quasi.check_positive(8, false), Err(Error::NonPositiveCoefficient { index: 3, .. })));
    }

    #[test]
    fn samples_validate() {
        let bad = CoefficientSamples { n: 2, grid: vec![0.0, 1.0], c: vec![vec![1.0, 1.0]] };
        assert!(CoefficientPath::linear(bad).is_err());
        let unsorted = CoefficientSamples { n: 1, grid: vec![0.0, 0.0], c: vec![vec![1.0, 1.0]] };
        assert!(CoefficientPath::linear(unsorted).is_err());
    }
}
