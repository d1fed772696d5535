//! Inserting a closed loop into a curve.

use crate::algebra::lift::{Cover, Dim, SpinCover, SpinOf};
use crate::algebra::matrix::Mat;
use crate::curves::{circle_sigma, frenet, lifted_endpoint, Curve, ExampleFamily, Jet, DEFAULT_GRID};
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Largest default half-width of the inserted block.
pub const DEFAULT_LOOP_EPS: f64 = 1e-2;

/// A closed locally convex curve with Frenet frame `I` at both ends and
/// lifted endpoint the identity spin.
#[derive(Debug, Clone)]
pub struct LoopTemplate<const N: usize> {
    curve: Curve<N>,
}

impl<const N: usize> LoopTemplate<N>
where
    Dim<N>: SpinCover<N>,
{
    pub fn new(curve: Curve<N>) -> Result<Self> {
        let f0 = frenet(&curve, 0.0)?.frame;
        if f0.max_abs_diff(&Mat::identity()) > 1e-8 {
            return Err(Error::InvalidInput("loop template must start at the identity frame".into()));
        }
        let end: SpinOf<N> = lifted_endpoint(&curve, DEFAULT_GRID)?;
        let gap = end.distance(&<SpinOf<N>>::identity());
        if gap > 1e-6 {
            return Err(Error::InvalidInput(format!("loop template does not close in the spin group (gap {gap:e})")));
        }
        Ok(LoopTemplate { curve })
    }

    pub fn curve(&self) -> &Curve<N> {
        &self.curve
    }
}

impl LoopTemplate<3> {
    /// `σ_π²`, a small circle traversed twice.
    pub fn standard() -> Self {
        let c = circle_sigma(PI).expect("π is an admissible length").iterate(2.0);
        LoopTemplate { curve: c.with_label("sigma_pi^2") }
    }
}

impl LoopTemplate<4> {
    /// `γ₁⁴`.
    pub fn standard() -> Self {
        LoopTemplate { curve: ExampleFamily::One.curve(4) }
    }
}

/// `ε = min(1e-2, d/2)` where `d` is the distance from `t₀` to the nearer
/// endpoint; `1e-2` at the endpoints themselves.
pub fn default_loop_eps(t0: f64) -> f64 {
    let d = t0.min(1.0 - t0);
    if d <= 0.0 {
        DEFAULT_LOOP_EPS
    } else {
        DEFAULT_LOOP_EPS.min(0.5 * d)
    }
}

/// `γ(a t + b)` with its derivatives.
fn affine<const N: usize>(c: &Curve<N>, a: f64, b: f64, t: f64) -> Jet<N> {
    let j = c.jet(a * t + b);
    let (a2, a3) = (a * a, a * a * a);
    Jet { pos: j.pos, d1: j.d1.map(|x| a * x), d2: j.d2.map(|x| a2 * x), d3: j.d3.map(|x| a3 * x) }
}

/// `γ ∗_{t₀} ω`: the curve `γ` with the template inserted at `t₀`, rotated
/// by `F_γ(t₀)` and traversed on a window of width `2ε` (`ε` at the
/// endpoints). The neighbouring pieces of `γ` are traversed twice as fast to
/// make room. `eps` defaults to [`default_loop_eps`].
pub fn add_loops<const N: usize>(
    curve: &Curve<N>,
    t0: f64,
    template: &LoopTemplate<N>,
    eps: Option<f64>,
) -> Result<Curve<N>> {
    if !(0.0..=1.0).contains(&t0) {
        return Err(Error::InvalidInput(format!("insertion time {t0} is outside [0, 1]")));
    }
    let eps = eps.unwrap_or_else(|| default_loop_eps(t0));
    if !(eps > 0.0) {
        return Err(Error::InvalidInput(format!("loop window must be positive, got {eps}")));
    }
    let (lo, hi) = match t0 {
        t if t == 0.0 => (0.0, 2.0 * eps),
        t if t == 1.0 => (1.0 - 2.0 * eps, 1.0),
        t => (t - 2.0 * eps, t + 2.0 * eps),
    };
    if lo < 0.0 || hi > 1.0 {
        return Err(Error::WindowOverflow { lo, hi });
    }
    let g = curve.clone();
    let omega = template.curve.clone().rotate(&frenet(curve, t0)?.frame);
    let label = format!("{}*_{t0}", curve.label());
    let out = if t0 == 0.0 {
        Curve::new(label, move |t| {
            if t <= eps {
                affine(&omega, 1.0 / eps, 0.0, t)
            } else if t <= 2.0 * eps {
                affine(&g, 2.0, -2.0 * eps, t)
            } else {
                g.jet(t)
            }
        })
    } else if t0 == 1.0 {
        Curve::new(label, move |t| {
            if t <= 1.0 - 2.0 * eps {
                g.jet(t)
            } else if t <= 1.0 - eps {
                affine(&g, 2.0, -1.0 + 2.0 * eps, t)
            } else {
                affine(&omega, 1.0 / eps, (eps - 1.0) / eps, t)
            }
        })
    } else {
        Curve::new(label, move |t| {
            if t <= t0 - 2.0 * eps {
                g.jet(t)
            } else if t <= t0 - eps {
                affine(&g, 2.0, -t0 + 2.0 * eps, t)
            } else if t <= t0 + eps {
                affine(&omega, 0.5 / eps, (eps - t0) / (2.0 * eps), t)
            } else if t <= t0 + 2.0 * eps {
                affine(&g, 2.0, -t0 - 2.0 * eps, t)
            } else {
                g.jet(t)
            }
        })
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quaternion::{SpinPair, UnitQuaternion};
    use crate::curves::is_locally_convex;

    #[test]
    fn templates_close_up() {
        assert!(LoopTemplate::new(LoopTemplate::<3>::standard().curve().clone()).is_ok());
        assert!(LoopTemplate::new(LoopTemplate::<4>::standard().curve().clone()).is_ok());
        // A single loop of a circle ends at -1 in the spin group.
        assert!(LoopTemplate::new(circle_sigma(PI).unwrap()).is_err());
    }

    #[test]
    fn endpoint_spin_is_preserved() {
        let template = LoopTemplate::<4>::standard();
        for fam in ExampleFamily::ALL {
            let g = fam.curve(1);
            let z: SpinPair = lifted_endpoint(&g, DEFAULT_GRID).unwrap();
            for t0 in [0.0, 0.5, 1.0] {
                let looped = add_loops(&g, t0, &template, None).unwrap();
                let w: SpinPair = lifted_endpoint(&looped, 4 * DEFAULT_GRID).unwrap();
                assert!(w.distance(z) < 1e-6, "{fam:?} at {t0}: {w} vs {z}");
                assert!(is_locally_convex(&looped, 4 * DEFAULT_GRID).holds);
            }
        }
        let s = circle_sigma(2.0).unwrap();
        let z: UnitQuaternion = lifted_endpoint(&s, DEFAULT_GRID).unwrap();
        let w: UnitQuaternion =
            lifted_endpoint(&add_loops(&s, 0.3, &LoopTemplate::<3>::standard(), None).unwrap(), 4096).unwrap();
        assert!(w.distance(z) < 1e-6);
    }

    #[test]
    fn piecewise_formula() {
        let g = ExampleFamily::Three.curve(1);
        let template = LoopTemplate::<4>::standard();
        let eps = 0.01;
        let looped = add_loops(&g, 0.5, &template, Some(eps)).unwrap();
        let f = frenet(&g, 0.5).unwrap().frame;
        let close = |a: [f64; 4], b: [f64; 4]| (0..4).all(|i| (a[i] - b[i]).abs() < 1e-12);
        assert!(close(looped.point(0.3), g.point(0.3)));
        assert!(close(looped.point(0.485), g.point(0.49)));
        assert!(close(looped.point(0.5), f.mul_vec(&template.curve().point(0.5))));
        // Squeeze windows run at twice the speed.
        let (v, w) = (frenet(&looped, 0.515).unwrap().speed, frenet(&g, 0.51).unwrap().speed);
        assert!((v - 2.0 * w).abs() < 1e-9);
        // Three pieces at t₀ = 0.
        let start = add_loops(&g, 0.0, &template, Some(eps)).unwrap();
        assert!(close(start.point(0.005), template.curve().point(0.5)));
        assert!(close(start.point(0.015), g.point(0.01)));
        assert!(close(start.point(0.5), g.point(0.5)));
        assert!(matches!(add_loops(&g, 0.01, &template, Some(eps)), Err(Error::WindowOverflow { .. })));
        assert!((default_loop_eps(0.004) - 0.002).abs() < 1e-15);
    }
}
