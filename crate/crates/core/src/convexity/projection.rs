//! Projective images of curves, the moment-curve test and positive
//! convexity certificates.

use super::intersections::{nonconvexity_certificate, Certificate, CertificateOptions, Verdict};
use crate::algebra::lift::Cover;
use crate::algebra::matrix::{dot, Mat};
use crate::bruhat::{identify_cell_lift, identify_cell_scaled, open_convex_cell};
use crate::curves::{frenet, lifted_frenet_path, uniform_grid, Curve, Jet};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Smallest admissible first coordinate for the central projection.
pub const CHART_MARGIN: f64 = 1e-12;

/// `u · x` for a scalar jet `u` and a vector jet `x`, by Leibniz' rule.
fn scale_jet<const N: usize>(u: [f64; 4], x: &Jet<N>) -> Jet<N> {
    let c = |f: &dyn Fn(usize) -> f64| -> [f64; N] { std::array::from_fn(|i| f(i)) };
    Jet {
        pos: c(&|i| u[0] * x.pos[i]),
        d1: c(&|i| u[1] * x.pos[i] + u[0] * x.d1[i]),
        d2: c(&|i| u[2] * x.pos[i] + 2.0 * u[1] * x.d1[i] + u[0] * x.d2[i]),
        d3: c(&|i| u[3] * x.pos[i] + 3.0 * u[2] * x.d1[i] + 3.0 * u[1] * x.d2[i] + u[0] * x.d3[i]),
    }
}

/// Jet of `1/a` from the jet of `a`.
fn reciprocal(a: [f64; 4]) -> [f64; 4] {
    let [a0, a1, a2, a3] = a;
    let r = 1.0 / a0;
    [
        r,
        -a1 * r * r,
        2.0 * a1 * a1 * r * r * r - a2 * r * r,
        -6.0 * a1 * a1 * a1 * r.powi(4) + 6.0 * a1 * a2 * r.powi(3) - a3 * r * r,
    ]
}

/// `t ↦ γ(t) / γ₁(t) = (1, γ₂/γ₁, …)`, the image of the curve in the affine
/// chart `x₁ = 1`. The first coordinate must be positive on `[lo, hi]`.
pub fn central_projection<const N: usize>(curve: &Curve<N>, lo: f64, hi: f64, samples: usize) -> Result<Curve<N>> {
    for k in 0..=samples {
        let t = lo + (hi - lo) * k as f64 / samples as f64;
        if !(curve.point(t)[0] > CHART_MARGIN) {
            return Err(Error::FirstCoordinateVanishes { t });
        }
    }
    let inner = curve.clone();
    Ok(Curve::new(format!("p({})", curve.label()), move |t| {
        let x = inner.jet(t);
        scale_jet(reciprocal([x.pos[0], x.d1[0], x.d2[0], x.d3[0]]), &x)
    }))
}

/// `t ↦ Uγ(t) / |Uγ(t)|`, the action of `U ∈ GL(N)` on curves in the sphere.
pub fn projective_image<const N: usize>(curve: &Curve<N>, u: &Mat<N>) -> Curve<N> {
    let inner = curve.clone();
    let u = *u;
    Curve::new(format!("B({})", curve.label()), move |t| {
        let x = inner.jet(t).map(&u);
        let s = [
            dot(&x.pos, &x.pos),
            2.0 * dot(&x.pos, &x.d1),
            2.0 * (dot(&x.d1, &x.d1) + dot(&x.pos, &x.d2)),
            2.0 * (3.0 * dot(&x.d1, &x.d2) + dot(&x.pos, &x.d3)),
        ];
        // Jet of s^(-1/2).
        let r = s[0].sqrt().recip();
        let r3 = r * r * r;
        let r5 = r3 * r * r;
        let r7 = r5 * r * r;
        let inv = [
            r,
            -0.5 * r3 * s[1],
            0.75 * r5 * s[1] * s[1] - 0.5 * r3 * s[2],
            -1.875 * r7 * s[1].powi(3) + 2.25 * r5 * s[1] * s[2] - 0.5 * r3 * s[3],
        ];
        scale_jet(inv, &x)
    })
}

/// `det(c, c′, …, c⁽ⁿ⁾)` for the moment-type curve `c(x) = (a₀, a₁x, …, a_n xⁿ)`,
/// which is the constant `∏ i! aᵢ`.
pub fn moment_wronskian(a: &[f64]) -> f64 {
    let mut factorial = 1.0;
    a.iter()
        .enumerate()
        .map(|(i, &ai)| {
            if i > 0 {
                factorial *= i as f64;
            }
            factorial * ai
        })
        .product()
}

/// `det(γ, γ′, …, γ⁽ⁿ⁾)` at `t`.
pub fn wronskian<const N: usize>(curve: &Curve<N>, t: f64) -> f64 {
    curve.jet(t).derivative_matrix().det()
}

/// Result of the cell criterion: a locally convex curve starting at `I` is
/// convex when its lifted frame lies in the open cell of `ā` at every
/// interior time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellCertificate {
    pub holds: bool,
    /// Interior grid points checked.
    pub checked: usize,
    /// First grid time whose frame is outside the open cell.
    pub witness: Option<f64>,
}

/// Checks the cell criterion on the interior points of a grid with `steps`
/// intervals. Frames close to the starting identity are classified after
/// rescaling by their distance in time from it.
pub fn cell_certificate<const N: usize, S: Cover<N>>(curve: &Curve<N>, steps: usize) -> Result<CellCertificate> {
    let top: S = open_convex_cell()?;
    let spins = lifted_frenet_path::<N, S>(curve, steps)?;
    for (k, z) in spins.iter().enumerate().take(steps).skip(1) {
        let t = k as f64 / steps as f64;
        let (rep, _) = match identify_cell_lift(*z) {
            Ok(r) => r,
            Err(_) => identify_cell_scaled(*z, t)?,
        };
        if rep.distance(&top) > 1e-9 {
            return Ok(CellCertificate { holds: false, checked: k, witness: Some(t) });
        }
    }
    Ok(CellCertificate { holds: true, checked: steps.saturating_sub(1), witness: None })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ConvexityVerdict {
    /// Certified by the cell criterion on the grid.
    Convex { cells: CellCertificate },
    NotConvex { certificate: Certificate },
    Inconclusive { reason: String },
}

/// Decides convexity where it can be certified either way: positively by
/// the cell criterion, negatively by a hyperplane met `N` times.
pub fn assess_convexity<const N: usize, S: Cover<N>>(
    curve: &Curve<N>,
    steps: usize,
    opts: CertificateOptions,
) -> ConvexityVerdict {
    let cells = cell_certificate::<N, S>(curve, steps);
    if let Ok(cells) = cells {
        if cells.holds {
            return ConvexityVerdict::Convex { cells };
        }
    }
    let certificate = nonconvexity_certificate(curve, opts);
    if certificate.verdict == Verdict::NotConvex {
        return ConvexityVerdict::NotConvex { certificate };
    }
    let reason = match cells {
        Ok(c) => format!("cell criterion fails at t = {:?} and no hyperplane certificate was found", c.witness),
        Err(e) => format!("cell criterion unavailable ({e}) and no hyperplane certificate was found"),
    };
    ConvexityVerdict::Inconclusive { reason }
}

fn frame_defect<const N: usize>(curve: &Curve<N>, t: f64) -> f64 {
    frenet(curve, t).map(|s| s.frame.max_abs_diff(&Mat::identity())).unwrap_or(f64::INFINITY)
}

/// Golden-section minimisation of `f` on `[a, b]`.
fn golden_min(mut a: f64, mut b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-13 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Times `0 = t₀ < … < t_k = 1` with Frenet frame `I` such that every arc
/// between them is convex, if the curve is multiconvex. Returns `None` when
/// the frame does not return to `I` at `t = 1` or some arc is not convex.
pub fn is_multiconvex<const N: usize, S: Cover<N>>(curve: &Curve<N>, samples: usize) -> Result<Option<Vec<f64>>> {
    if frame_defect(curve, 0.0) > 1e-6 || frame_defect(curve, 1.0) > 1e-6 {
        return Ok(None);
    }
    let grid: Vec<f64> = uniform_grid(samples).collect();
    let defect: Vec<f64> = grid.iter().map(|&t| frame_defect(curve, t)).collect();
    let mut times = vec![0.0];
    for i in 1..samples {
        if defect[i] < 0.1 && defect[i] <= defect[i - 1] && defect[i] < defect[i + 1] {
            let t = golden_min(grid[i - 1], grid[i + 1], |t| frame_defect(curve, t));
            if frame_defect(curve, t) < 1e-6 && t - times.last().copied().unwrap_or(0.0) > 1e-9 {
                times.push(t);
            }
        }
    }
    times.push(1.0);
    for w in times.windows(2) {
        let (a, b) = (w[0], w[1]);
        let start = frenet(curve, a)?.frame.transpose();
        let arc = curve.reparametrize(move |s| [a + (b - a) * s, b - a, 0.0, 0.0]).rotate(&start);
        match assess_convexity::<N, S>(&arc, 128, CertificateOptions::default()) {
            ConvexityVerdict::Convex { .. } => {}
            ConvexityVerdict::NotConvex { .. } => return Ok(None),
            ConvexityVerdict::Inconclusive { reason } => {
                return Err(Error::Inconclusive(format!("arc [{a}, {b}]: {reason}")))
            }
        }
    }
    Ok(Some(times))
}
