//! Counting intersections of a curve with a hyperplane through the origin,
//! with multiplicity, and searching for hyperplanes met too often.

use crate::algebra::matrix::{dot, norm, Mat, Vector};
use crate::curves::{uniform_grid, Curve, Jet};
use crate::error::{Error, Result};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Default number of samples used to bracket roots.
pub const DEFAULT_SAMPLES: usize = 8192;
/// Default relative threshold below which a derivative counts as zero.
pub const DEFAULT_TOL: f64 = 1e-7;
/// Roots closer than this to an endpoint are not counted.
pub const ENDPOINT_MARGIN: f64 = 1e-9;
/// Roots closer than this are merged.
pub const MERGE_DISTANCE: f64 = 1e-9;
const BISECTION_WIDTH: f64 = 1e-12;

/// The hyperplane `{x : normal · x = 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane<const N: usize> {
    #[serde(with = "crate::io::array")]
    normal: Vector<N>,
}

impl<const N: usize> Hyperplane<N> {
    /// Normalises `normal`, which must be nonzero and finite.
    pub fn new(normal: Vector<N>) -> Result<Self> {
        let n = norm(&normal);
        if !(n > 1e-300) || !n.is_finite() {
            return Err(Error::InvalidInput("hyperplane normal must be nonzero".into()));
        }
        Ok(Hyperplane { normal: normal.map(|x| x / n) })
    }

    pub fn normal(&self) -> &Vector<N> {
        &self.normal
    }

    /// The hyperplane through the origin and the `N - 1` given points.
    pub fn through(points: &[Vector<N>]) -> Result<Self> {
        if points.len() + 1 != N {
            return Err(Error::InvalidInput(format!("need {} points, got {}", N - 1, points.len())));
        }
        let normal = std::array::from_fn(|i| {
            let rows = std::array::from_fn(|r| {
                if r + 1 < N {
                    points[r]
                } else {
                    std::array::from_fn(|j| if j == i { 1.0 } else { 0.0 })
                }
            });
            Mat::from_rows(rows).det()
        });
        Self::new(normal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub t: f64,
    #[serde(rename = "mult")]
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub roots: Vec<Root>,
    pub total: usize,
    /// Roots only count inside `(0, 1)`; zeros at the endpoints are listed
    /// separately.
    pub interior_only: bool,
    pub endpoint_zeros: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntersectionOptions {
    pub samples: usize,
    pub tol: f64,
}

impl Default for IntersectionOptions {
    fn default() -> Self {
        IntersectionOptions { samples: DEFAULT_SAMPLES, tol: DEFAULT_TOL }
    }
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut f_lo = f(lo);
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Decides whether `value` is zero at threshold `threshold`, refusing to
/// guess inside a factor-10 band around it.
fn vanishes(value: f64, threshold: f64, t: f64) -> Result<bool> {
    let v = value.abs();
    if v < 0.1 * threshold {
        Ok(true)
    } else if v > 10.0 * threshold {
        Ok(false)
    } else {
        Err(Error::TangencyUnresolved { t })
    }
}

/// Zeros of `t ↦ normal · γ(t)` in `(0, 1)` with multiplicities.
///
/// Sign changes on the sample grid are refined by bisection. Touching
/// zeros are found where `normal · γ′` changes sign and `|normal · γ|`
/// drops below the tolerance. The multiplicity at a zero is one more than
/// the number of successive derivatives `normal · γ⁽ʲ⁾` below
/// `tol · max|γ⁽ʲ⁾|`, capped at `N`.
pub fn hyperplane_intersections<const N: usize>(
    curve: &Curve<N>,
    plane: &Hyperplane<N>,
    opts: IntersectionOptions,
) -> Result<IntersectionReport> {
    let a = plane.normal;
    let samples = opts.samples.max(4);
    let jets: Vec<Jet<N>> = uniform_grid(samples).map(|t| curve.jet(t)).collect();
    let mut scale = [0.0f64; 4];
    for j in &jets {
        for (d, s) in scale.iter_mut().enumerate() {
            *s = s.max(norm(&j.derivative(d)));
        }
    }
    let f = |t: f64| dot(&a, &curve.point(t));
    let g = |t: f64| dot(&a, &curve.jet(t).d1);
    let fs: Vec<f64> = jets.iter().map(|j| dot(&a, &j.pos)).collect();
    let gs: Vec<f64> = jets.iter().map(|j| dot(&a, &j.d1)).collect();
    let h = 1.0 / samples as f64;

    let mut candidates = Vec::new();
    for i in 0..samples {
        let (t0, t1) = (i as f64 * h, (i + 1) as f64 * h);
        if fs[i] == 0.0 {
            candidates.push(t0);
        } else if fs[i] * fs[i + 1] < 0.0 {
            candidates.push(bisect(t0, t1, f));
        }
    }
    if fs[samples] == 0.0 {
        candidates.push(1.0);
    }
    for i in 1..samples {
        let no_sign_change = fs[i - 1] * fs[i] > 0.0 && fs[i] * fs[i + 1] > 0.0;
        let local_min = fs[i].abs() <= fs[i - 1].abs() && fs[i].abs() <= fs[i + 1].abs();
        if no_sign_change && local_min && gs[i - 1] * gs[i + 1] <= 0.0 {
            let (lo, hi) = ((i - 1) as f64 * h, (i + 1) as f64 * h);
            let t = if gs[i - 1] == 0.0 { lo } else if gs[i + 1] == 0.0 { hi } else { bisect(lo, hi, g) };
            if vanishes(f(t), opts.tol * scale[0], t)? {
                candidates.push(t);
            }
        }
    }

    let mut roots: Vec<Root> = Vec::new();
    let mut endpoint_zeros = Vec::new();
    for t in candidates {
        if t < ENDPOINT_MARGIN || t > 1.0 - ENDPOINT_MARGIN {
            endpoint_zeros.push(t);
            continue;
        }
        let jet = curve.jet(t);
        let mut multiplicity = 1;
        for d in 1..=3.min(N - 1) {
            if !vanishes(dot(&a, &jet.derivative(d)), opts.tol * scale[d], t)? {
                break;
            }
            multiplicity += 1;
        }
        roots.push(Root { t, multiplicity: multiplicity.min(N) });
    }
    roots.sort_by(|x, y| x.t.total_cmp(&y.t));
    let mut merged: Vec<Root> = Vec::new();
    for r in roots {
        match merged.last_mut() {
            Some(last) if r.t - last.t < MERGE_DISTANCE => last.multiplicity = (last.multiplicity + r.multiplicity).min(N),
            _ => merged.push(r),
        }
    }
    let total = merged.iter().map(|r| r.multiplicity).sum();
    Ok(IntersectionReport { roots: merged, total, interior_only: true, endpoint_zeros })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NotConvex,
    Inconclusive,
}

/// A hyperplane met at least `N` times, or the admission that none was
/// found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub normal: Vec<f64>,
    pub roots: Vec<Root>,
    pub total: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateOptions {
    /// Number of candidate hyperplanes tried.
    pub budget: usize,
    pub seed: u64,
    /// Samples used while screening candidates; accepted candidates are
    /// re-verified with [`IntersectionOptions::default`] at half the
    /// tolerance.
    pub screening_samples: usize,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions { budget: 400, seed: 0, screening_samples: 2048 }
    }
}

/// Certificates only count roots at least this far from the endpoints. A
/// zero of order k at an endpoint moves inside by about `ε^(1/k)` under a
/// perturbation of size `ε`, so nearer roots are not evidence.
pub const CERTIFICATE_MARGIN: f64 = 1e-4;

fn verified<const N: usize>(curve: &Curve<N>, plane: &Hyperplane<N>) -> Option<IntersectionReport> {
    let full = IntersectionOptions { samples: DEFAULT_SAMPLES, tol: 0.5 * DEFAULT_TOL };
    let mut report = hyperplane_intersections(curve, plane, full).ok()?;
    report.roots.retain(|r| r.t >= CERTIFICATE_MARGIN && r.t <= 1.0 - CERTIFICATE_MARGIN);
    report.total = report.roots.iter().map(|r| r.multiplicity).sum();
    (report.total >= N).then_some(report)
}

/// Searches for a hyperplane meeting the curve at least `N = n + 1` times
/// in `(0, 1)`, which proves the curve is not convex. Candidates are the
/// coordinate hyperplanes, the hyperplanes `x_i ± x_j = 0`,
/// and hyperplanes through `n` sampled curve points, first on evenly spread
/// parameters and then on random ones. A certificate whose simple roots
/// alone reach `N` is preferred over one relying on tangencies.
pub fn nonconvexity_certificate<const N: usize>(curve: &Curve<N>, opts: CertificateOptions) -> Certificate {
    let screen = IntersectionOptions { samples: opts.screening_samples, tol: DEFAULT_TOL };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let grid = 1024;
    let mut tried = 0;
    let mut candidates: Vec<Hyperplane<N>> = (0..N)
        .filter_map(|i| Hyperplane::new(std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 })).ok())
        .collect();
    // Hyperplanes containing a coordinate plane of codimension two.
    for i in 0..N {
        for j in i + 1..N {
            for sign in [1.0, -1.0] {
                let normal = std::array::from_fn(|k| if k == i { 1.0 } else if k == j { sign } else { 0.0 });
                candidates.extend(Hyperplane::new(normal).ok());
            }
        }
    }
    let spread = |offset: f64, gap: f64| -> Option<Hyperplane<N>> {
        let points: Vec<Vector<N>> = (0..N - 1).map(|k| curve.point((offset + k as f64 * gap).fract())).collect();
        Hyperplane::through(&points).ok()
    };
    for k in 1..=8 {
        candidates.extend(spread(0.5 / (k as f64 * N as f64), 1.0 / (k as f64 * (N - 1) as f64 + 1.0)));
    }
    let next_random = |rng: &mut ChaCha8Rng| -> Option<Hyperplane<N>> {
        let picks = sample(rng, grid - 1, N - 1);
        let jitter: f64 = rng.gen_range(0.0..1.0);
        let points: Vec<Vector<N>> =
            picks.iter().map(|p| curve.point((p as f64 + 1.0 + 0.5 * jitter) / grid as f64)).collect();
        Hyperplane::through(&points).ok()
    };
    let mut queue = candidates.drain(..).collect::<std::collections::VecDeque<_>>();
    let mut fallback = None;
    while tried < opts.budget {
        let plane = match queue.pop_front() {
            Some(p) => p,
            None => match next_random(&mut rng) {
                Some(p) => p,
                None => {
                    tried += 1;
                    continue;
                }
            },
        };
        tried += 1;
        let Ok(report) = hyperplane_intersections(curve, &plane, screen) else { continue };
        if report.total >= N {
            if let Some(report) = verified(curve, &plane) {
                let transversal = report.roots.iter().filter(|r| r.multiplicity == 1).count() >= N;
                let cert = Certificate {
                    normal: plane.normal.to_vec(),
                    roots: report.roots,
                    total: report.total,
                    verdict: Verdict::NotConvex,
                };
                if transversal {
                    return cert;
                }
                // Tangential counts depend on the tolerance; keep looking
                // for one that survives perturbation.
                fallback.get_or_insert(cert);
            }
        }
    }
    fallback.unwrap_or(Certificate { normal: Vec::new(), roots: Vec::new(), total: 0, verdict: Verdict::Inconclusive })
}

/// Re-checks a certificate from scratch at half the default tolerance.
pub fn verify_certificate<const N: usize>(curve: &Curve<N>, cert: &Certificate) -> Result<bool> {
    if cert.verdict != Verdict::NotConvex {
        return Ok(false);
    }
    let normal: Vector<N> = cert
        .normal
        .as_slice()
        .try_into()
        .map_err(|_| Error::InvalidInput(format!("certificate normal must have {N} entries")))?;
    Ok(verified(curve, &Hyperplane::new(normal)?).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{circle_sigma, ExampleFamily};

    #[test]
    fn gamma1_fifth_power_meets_the_plane() {
        let curve = ExampleFamily::One.curve(5);
        for normal in [[0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.6, 0.8, 0.0]] {
            let report = hyperplane_intersections(&curve, &Hyperplane::new(normal).unwrap(), Default::default()).unwrap();
            for i in 1..=4 {
                let t = i as f64 / 5.0;
                assert!(report.roots.iter().any(|r| (r.t - t).abs() < 1e-9), "{normal:?} misses {t}");
            }
            assert!(report.total >= 4);
        }
    }

    #[test]
    fn small_circle_meets_planes_at_most_twice() {
        let sigma = circle_sigma(4.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (mut checked, mut hits) = (0, 0);
        while checked < 50 {
            let n: Vector<3> = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let plane = Hyperplane::new(n).unwrap();
            // Planes nearly tangent to the circle are ill-conditioned; the
            // count is then 2 but the multiplicity test may refuse to decide.
            let Ok(report) = hyperplane_intersections(&sigma, &plane, Default::default()) else { continue };
            // σ(0) = σ(1), so a zero there is one point of the closed circle.
            let at_ends = usize::from(!report.endpoint_zeros.is_empty());
            let count = report.total + at_ends;
            assert!(count == 0 || count == 2, "{n:?}: {report:?}");
            hits += usize::from(count == 2);
            checked += 1;
        }
        assert!(hits > 10);
    }

    #[test]
    fn no_roots_without_crossing() {
        let sigma = circle_sigma(2.0).unwrap();
        let report = hyperplane_intersections(&sigma, &Hyperplane::new([1.0, 0.0, 0.0]).unwrap(), Default::default()).unwrap();
        assert_eq!(report.total, 0);
    }

    #[test]
    fn tangency_has_multiplicity_two() {
        // The plane spanned by σ(½) and σ′(½) is tangent to σ there.
        let sigma = circle_sigma(std::f64::consts::PI).unwrap();
        let p = sigma.point(0.5);
        let v = sigma.jet(0.5).d1;
        let n = [p[1] * v[2] - p[2] * v[1], p[2] * v[0] - p[0] * v[2], p[0] * v[1] - p[1] * v[0]];
        let report = hyperplane_intersections(&sigma, &Hyperplane::new(n).unwrap(), Default::default()).unwrap();
        let tangency = report.roots.iter().find(|r| (r.t - 0.5).abs() < 1e-6).unwrap();
        assert_eq!(tangency.multiplicity, 2);
    }

    #[test]
    fn certificates() {
        let cert = nonconvexity_certificate(&ExampleFamily::One.curve(5), CertificateOptions::default());
        assert_eq!(cert.verdict, Verdict::NotConvex);
        assert!(cert.total >= 4);
        assert!(verify_certificate(&ExampleFamily::One.curve(5), &cert).unwrap());
        // Every coordinate hyperplane is tangent to γ₁⁵; the search moves past them.
        assert!(cert.roots.iter().all(|r| r.multiplicity == 1 && r.t > CERTIFICATE_MARGIN && r.t < 1.0 - CERTIFICATE_MARGIN));

        let loops = circle_sigma(3.0).unwrap().iterate(5.0);
        let cert = nonconvexity_certificate(&loops, CertificateOptions::default());
        assert_eq!(cert.verdict, Verdict::NotConvex);
        assert!(cert.total >= 3);

        let opts = CertificateOptions { budget: 60, ..Default::default() };
        assert_eq!(nonconvexity_certificate(&ExampleFamily::One.curve(1), opts).verdict, Verdict::Inconclusive);
    }

    #[test]
    fn plane_through_points() {
        let plane = Hyperplane::<3>::through(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]).unwrap();
        assert_eq!(plane.normal(), &[0.0, 0.0, 1.0]);
    }
}
