//! Curves on S² and S³ given by analytic jet evaluators, their Frenet
//! frames and the explicit example families.

pub mod examples;
pub mod frenet;

pub use examples::{circle_sigma, ExampleFamily};
pub use frenet::{
    frenet, frenet_path, is_generic, is_locally_convex, lifted_endpoint, lifted_frenet_path, log_derivative,
    FrenetSample, LogDerivative, PredicateReport, DEFAULT_GRID,
};

use crate::algebra::matrix::{Mat, Vector};
use std::fmt;
use std::sync::Arc;

/// Position and first three derivatives of a curve at one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<const N: usize> {
    pub pos: Vector<N>,
    pub d1: Vector<N>,
    pub d2: Vector<N>,
    pub d3: Vector<N>,
}

impl<const N: usize> Jet<N> {
    /// The `j`-th derivative, `0 ≤ j ≤ 3`.
    pub fn derivative(&self, j: usize) -> Vector<N> {
        match j {
            0 => self.pos,
            1 => self.d1,
            2 => self.d2,
            3 => self.d3,
            _ => panic!("jets carry derivatives up to order 3"),
        }
    }

    /// Applies a linear map to every derivative.
    pub fn map(&self, m: &Mat<N>) -> Self {
        Jet { pos: m.mul_vec(&self.pos), d1: m.mul_vec(&self.d1), d2: m.mul_vec(&self.d2), d3: m.mul_vec(&self.d3) }
    }

    /// Matrix whose columns are `γ, γ′, …, γ⁽ᴺ⁻¹⁾`.
    pub fn derivative_matrix(&self) -> Mat<N> {
        let mut m = Mat::zeros();
        for j in 0..N {
            m.set_column(j, &self.derivative(j));
        }
        m
    }
}

type Evaluator<const N: usize> = dyn Fn(f64) -> Jet<N> + Send + Sync;

/// A smooth curve `[0, 1] → Sⁿ` with `N = n + 1`.
#[derive(Clone)]
pub struct Curve<const N: usize> {
    eval: Arc<Evaluator<N>>,
    label: String,
}

pub type Curve3 = Curve<3>;
pub type Curve4 = Curve<4>;

impl<const N: usize> fmt::Debug for Curve<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Curve").field("dimension", &N).field("label", &self.label).finish()
    }
}

impl<const N: usize> Curve<N> {
    pub fn new(label: impl Into<String>, eval: impl Fn(f64) -> Jet<N> + Send + Sync + 'static) -> Self {
        Curve { eval: Arc::new(eval), label: label.into() }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn jet(&self, t: f64) -> Jet<N> {
        (self.eval)(t)
    }

    pub fn point(&self, t: f64) -> Vector<N> {
        self.jet(t).pos
    }

    /// `γ ∘ φ`, where `phi(s)` returns `φ(s)` and its first three derivatives.
    pub fn reparametrize(&self, phi: impl Fn(f64) -> [f64; 4] + Send + Sync + 'static) -> Self {
        let inner = self.eval.clone();
        Curve::new(format!("{}∘φ", self.label), move |s| {
            let [p, p1, p2, p3] = phi(s);
            let j = inner(p);
            let d1 = j.d1.map(|x| x * p1);
            let d2 = std::array::from_fn(|i| j.d2[i] * p1 * p1 + j.d1[i] * p2);
            let d3 = std::array::from_fn(|i| j.d3[i] * p1 * p1 * p1 + 3.0 * j.d2[i] * p1 * p2 + j.d1[i] * p3);
            Jet { pos: j.pos, d1, d2, d3 }
        })
    }

    /// `t ↦ Q γ(t)`.
    pub fn rotate(&self, q: &Mat<N>) -> Self {
        let inner = self.eval.clone();
        let q = *q;
        Curve::new(format!("Q·{}", self.label), move |t| inner(t).map(&q))
    }

    /// `t ↦ γ(k t)`; the evaluator must be defined on `[0, k]`.
    pub fn iterate(&self, k: f64) -> Self {
        self.reparametrize(move |t| [k * t, k, 0.0, 0.0]).with_label(format!("{}^{k}", self.label))
    }

    /// `t ↦ γ(1 - t)`.
    pub fn reverse(&self) -> Self {
        self.reparametrize(|t| [1.0 - t, -1.0, 0.0, 0.0]).with_label(format!("{}⁻", self.label))
    }
}

/// Uniform grid `t_k = k / steps`, `k = 0..=steps`.
pub fn uniform_grid(steps: usize) -> impl Iterator<Item = f64> {
    (0..=steps).map(move |k| k as f64 / steps as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::max_abs_diff_vec;

    fn helix() -> Curve3 {
        let r = 0.6f64;
        let h = 0.8f64;
        Curve::new("helix", move |t: f64| Jet {
            pos: [h, r * t.cos(), r * t.sin()],
            d1: [0.0, -r * t.sin(), r * t.cos()],
            d2: [0.0, -r * t.cos(), -r * t.sin()],
            d3: [0.0, r * t.sin(), -r * t.cos()],
        })
    }

    #[test]
    fn chain_rule_against_finite_differences() {
        let c = helix().reparametrize(|s| [s * s + s, 2.0 * s + 1.0, 2.0, 0.0]);
        let eps = 1e-5;
        for &t in &[0.1, 0.4, 0.9] {
            let j = c.jet(t);
            let jp = c.jet(t + eps);
            let jm = c.jet(t - eps);
            for (lo, hi, d) in [(jm.pos, jp.pos, j.d1), (jm.d1, jp.d1, j.d2), (jm.d2, jp.d2, j.d3)] {
                let fd: Vector<3> = std::array::from_fn(|i| (hi[i] - lo[i]) / (2.0 * eps));
                assert!(max_abs_diff_vec(&fd, &d) < 1e-6);
            }
        }
    }

    #[test]
    fn iterate_by_one_is_identity() {
        let c = helix();
        let it = c.iterate(1.0);
        assert_eq!(c.jet(0.3), it.jet(0.3));
    }
}
