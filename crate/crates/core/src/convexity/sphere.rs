//! Hemispheres and rotation numbers of closed curves on S².

use crate::algebra::matrix::{dot, norm, scale, Vector};
use crate::curves::{uniform_grid, Curve3};
use crate::error::{Error, Result};
use nalgebra::{Matrix3, SymmetricEigen};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Default number of samples for hemisphere and winding computations.
pub const SPHERE_SAMPLES: usize = 4096;
/// Margin separating open from closed hemispheres.
pub const HEMISPHERE_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HemisphereKind {
    /// `h · γ(t) > 0` for all samples.
    Open,
    /// `h · γ(t) ≥ 0` with equality attained: a closed but not an open
    /// hemisphere.
    Borderline,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hemisphere {
    pub pole: [f64; 3],
    pub kind: HemisphereKind,
    /// `min_t h · γ(t)`.
    pub margin: f64,
}

fn cross(a: &Vector<3>, b: &Vector<3>) -> Vector<3> {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn unit(v: Vector<3>) -> Vector<3> {
    scale(1.0 / norm(&v), &v)
}

fn min_margin(h: &Vector<3>, points: &[Vector<3>]) -> (f64, usize) {
    points.iter().enumerate().map(|(i, p)| (dot(h, p), i)).fold((f64::INFINITY, 0), |a, b| if b.0 < a.0 { b } else { a })
}

/// Gilbert's algorithm for the point of the convex hull closest to 0.
fn min_norm_point(points: &[Vector<3>]) -> Vector<3> {
    let mut x = points[0];
    for _ in 0..20_000 {
        let (_, i) = min_margin(&x, points);
        let p = points[i];
        let gap = dot(&x, &x) - dot(&x, &p);
        if gap <= 1e-15 * dot(&x, &x).max(1e-300) {
            break;
        }
        let d = [x[0] - p[0], x[1] - p[1], x[2] - p[2]];
        let lambda = (dot(&x, &d) / dot(&d, &d)).clamp(0.0, 1.0);
        x = [x[0] - lambda * d[0], x[1] - lambda * d[1], x[2] - lambda * d[2]];
        if norm(&x) < 1e-14 {
            break;
        }
    }
    x
}

/// Improves `min_i h · p_i` by projected subgradient ascent.
fn ascend(mut h: Vector<3>, points: &[Vector<3>]) -> (Vector<3>, f64) {
    let mut best = (h, min_margin(&h, points).0);
    let mut step = 0.1;
    for _ in 0..400 {
        let (_, i) = min_margin(&h, points);
        let p = points[i];
        h = unit([h[0] + step * p[0], h[1] + step * p[1], h[2] + step * p[2]]);
        let m = min_margin(&h, points).0;
        if m > best.1 {
            best = (h, m);
        }
        step *= 0.98;
    }
    best
}

/// Looks for a pole `h` with the closed curve in the hemisphere around it.
///
/// The point of the sampled convex hull nearest the origin gives the pole
/// of largest margin when the hull misses the origin. Otherwise the best
/// candidate is the normal of the plane the samples are closest to
/// (smallest eigenvector of `Σ p pᵀ`), refined by subgradient ascent; the
/// curve is borderline when that reaches margin `-tol`.
pub fn hemisphere_check(curve: &Curve3, samples: usize, tol: f64) -> Result<Option<Hemisphere>> {
    let gap = norm(&[
        curve.point(0.0)[0] - curve.point(1.0)[0],
        curve.point(0.0)[1] - curve.point(1.0)[1],
        curve.point(0.0)[2] - curve.point(1.0)[2],
    ]);
    if gap > 1e-9 {
        return Err(Error::InvalidInput(format!("curve is not closed (gap {gap:e})")));
    }
    let points: Vec<Vector<3>> = uniform_grid(samples).map(|t| curve.point(t)).collect();
    let q = min_norm_point(&points);
    if norm(&q) > HEMISPHERE_MARGIN {
        let (h, margin) = ascend(unit(q), &points);
        if margin > HEMISPHERE_MARGIN {
            return Ok(Some(Hemisphere { pole: h, kind: HemisphereKind::Open, margin }));
        }
    }
    let scatter = points.iter().fold(Matrix3::zeros(), |acc, p| {
        let v = nalgebra::Vector3::new(p[0], p[1], p[2]);
        acc + v * v.transpose()
    });
    let eig = SymmetricEigen::new(scatter);
    let k = eig.eigenvalues.imin();
    let v = eig.eigenvectors.column(k);
    let mut best: Option<(Vector<3>, f64)> = None;
    for s in [1.0, -1.0] {
        let cand = ascend([s * v[0], s * v[1], s * v[2]], &points);
        if best.map_or(true, |b| cand.1 > b.1) {
            best = Some(cand);
        }
    }
    Ok(best.filter(|(_, m)| *m >= -tol).map(|(h, margin)| Hemisphere {
        pole: h,
        kind: if margin > HEMISPHERE_MARGIN { HemisphereKind::Open } else { HemisphereKind::Borderline },
        margin,
    }))
}

/// Rotation number of a closed curve in the hemisphere around `h`.
///
/// The curve is projected stereographically from `-h` to the plane `h^⊥`,
/// oriented by a basis `(u, w)` with `u × w = -h`. The result is minus the
/// winding number of the velocity of the projected curve.
pub fn rotation_number(curve: &Curve3, h: &Vector<3>, samples: usize) -> Result<i64> {
    let h = unit(*h);
    let seed = if h[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let u = unit(cross(&seed, &h));
    let w = cross(&h, &u);
    // u × w = u × (h × u) = h; swap to get -h.
    let (u, w) = (w, u);
    let scale_ref = uniform_grid(64).map(|t| norm(&curve.jet(t).d1)).fold(0.0, f64::max);
    let velocity = |t: f64| -> Result<(f64, f64)> {
        let j = curve.jet(t);
        let s = 1.0 + dot(&j.pos, &h);
        let ds = dot(&j.d1, &h);
        let vx = dot(&j.d1, &u) / s - dot(&j.pos, &u) * ds / (s * s);
        let vy = dot(&j.d1, &w) / s - dot(&j.pos, &w) * ds / (s * s);
        if (vx * vx + vy * vy).sqrt() < 1e-10 * scale_ref {
            return Err(Error::ImmersionLost { t });
        }
        Ok((vx, vy))
    };
    let mut total = 0.0;
    let (x0, y0) = velocity(0.0)?;
    let mut prev = y0.atan2(x0);
    for t in uniform_grid(samples).skip(1) {
        let (x, y) = velocity(t)?;
        let angle = y.atan2(x);
        let mut delta = angle - prev;
        delta -= TAU * ((delta + PI) / TAU).floor();
        total += delta;
        prev = angle;
    }
    let winding = total / TAU;
    let rounded = winding.round();
    if (winding - rounded).abs() > 0.1 {
        return Err(Error::Inconclusive(format!("winding {winding} is not close to an integer")));
    }
    Ok(-(rounded as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::circle_sigma;

    #[test]
    fn twice_traversed_circle() {
        let c = circle_sigma(PI).unwrap().iterate(2.0);
        let hemi = hemisphere_check(&c, SPHERE_SAMPLES, 1e-9).unwrap().unwrap();
        assert_eq!(hemi.kind, HemisphereKind::Open);
        let rho = (0.5f64).asin();
        let axis = [rho.cos(), 0.0, rho.sin()];
        assert!(dot(&hemi.pole, &axis) > 0.999);
        assert_eq!(rotation_number(&c, &hemi.pole, SPHERE_SAMPLES).unwrap(), 2);
    }

    #[test]
    fn single_loop() {
        for c in [1.0, 3.0, 5.5] {
            let s = circle_sigma(c).unwrap();
            let hemi = hemisphere_check(&s, SPHERE_SAMPLES, 1e-9).unwrap().unwrap();
            assert_eq!(rotation_number(&s, &hemi.pole, SPHERE_SAMPLES).unwrap(), 1);
            assert_eq!(rotation_number(&s.reverse(), &hemi.pole, SPHERE_SAMPLES).unwrap(), -1);
        }
    }

    #[test]
    fn meridian_is_borderline() {
        let m = circle_sigma(TAU).unwrap();
        let hemi = hemisphere_check(&m, SPHERE_SAMPLES, 1e-9).unwrap().unwrap();
        assert_eq!(hemi.kind, HemisphereKind::Borderline);
        assert!(hemi.pole[2].abs() > 1.0 - 1e-9);
    }

    #[test]
    fn antipodal_curve_has_no_hemisphere() {
        // A closed curve through e₁, -e₁ and ±e₃ off the equator.
        let c = crate::curves::Curve::new("figure", |t: f64| {
            let a = TAU * t;
            let raw = [a.cos(), 0.4 * (2.0 * a).sin(), a.sin()];
            let jet = crate::curves::Jet { pos: raw, d1: [0.0; 3], d2: [0.0; 3], d3: [0.0; 3] };
            let n = norm(&raw);
            crate::curves::Jet { pos: scale(1.0 / n, &jet.pos), ..jet }
        });
        assert_eq!(hemisphere_check(&c, 2048, 1e-9).unwrap(), None);
    }
}
