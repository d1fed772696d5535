use locconvex::algebra::{pi3, pi4, Mat, Quaternion, SpinPair, UnitQuaternion};
use locconvex::convexity::{
    hyperplane_intersections, nonconvexity_certificate, projective_image, verify_certificate, CertificateOptions,
    Hyperplane, Verdict,
};
use locconvex::curves::{circle_sigma, frenet, is_locally_convex, Curve, ExampleFamily};
use locconvex::transforms::{arnold_dual, time_reversal};
use proptest::prelude::*;

fn unit() -> impl Strategy<Value = UnitQuaternion> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("away from zero", |a| a.iter().map(|x| x * x).sum::<f64>() > 0.05)
        .prop_map(|a| UnitQuaternion::normalize(Quaternion::from(a)).unwrap())
}

fn examples() -> Vec<Curve<4>> {
    ExampleFamily::ALL.iter().flat_map(|f| (1..=3).map(move |m| f.curve(m))).collect()
}

fn invertible<const N: usize>() -> impl Strategy<Value = Mat<N>> {
    prop::collection::vec(-0.5f64..0.5, N * N).prop_map(|v| {
        Mat::<N>(std::array::from_fn(|i| std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 } + v[i * N + j])))
    })
}

fn transpose_apply<const N: usize>(u: &Mat<N>, b: &[f64; N]) -> [f64; N] {
    u.transpose().mul_vec(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn determinants_factor_through_curvature(t in 0.0f64..1.0, c in 0.5f64..6.0) {
        for g in examples() {
            let s = frenet(&g, t).unwrap();
            let (k, tau) = (s.kappa, s.tau.unwrap());
            let det = g.jet(t).derivative_matrix().det();
            let expected = k * k * tau * s.speed.powi(6);
            prop_assert!((det - expected).abs() < 1e-8 * expected.abs());
        }
        let sigma = circle_sigma(c).unwrap();
        let s = frenet(&sigma, t).unwrap();
        let det = sigma.jet(t).derivative_matrix().det();
        prop_assert!((det - s.kappa * s.speed.powi(3)).abs() < 1e-8 * det.abs());
    }

    #[test]
    fn frames_are_reparametrization_invariant(t in 0.05f64..1.0) {
        for g in examples() {
            let squared = g.reparametrize(|s| [s * s, 2.0 * s, 2.0, 0.0]);
            let (a, b) = (frenet(&squared, t).unwrap().frame, frenet(&g, t * t).unwrap().frame);
            prop_assert!(a.max_abs_diff(&b) < 1e-9);
        }
    }

    #[test]
    fn frames_are_rotation_equivariant(t in 0.0f64..1.0, l in unit(), r in unit()) {
        let q = pi4(SpinPair::new(l, r));
        for g in examples() {
            let rotated = frenet(&g.rotate(&q), t).unwrap().frame;
            prop_assert!(rotated.max_abs_diff(&(q * frenet(&g, t).unwrap().frame)) < 1e-9);
        }
        let q3 = pi3(l);
        let sigma = circle_sigma(2.0).unwrap();
        prop_assert!(frenet(&sigma.rotate(&q3), t).unwrap().frame.max_abs_diff(&(q3 * frenet(&sigma, t).unwrap().frame)) < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn intersection_counts_are_projectively_invariant(
        u3 in invertible::<3>(),
        u4 in invertible::<4>(),
        b3 in prop::array::uniform3(-1.0f64..1.0),
        b4 in prop::array::uniform4(-1.0f64..1.0),
    ) {
        prop_assume!(u3.det() > 0.2 && u4.det() > 0.2);
        // The image plane b of B(U, γ) pulls back to Uᵀb on γ.
        let sigma = circle_sigma(4.0).unwrap();
        let count3 = |c: &Curve<3>, n: [f64; 3]| {
            hyperplane_intersections(c, &Hyperplane::new(n).unwrap(), Default::default()).map(|r| r.total)
        };
        if let (Ok(a), Ok(b)) = (count3(&sigma, transpose_apply(&u3, &b3)), count3(&projective_image(&sigma, &u3), b3)) {
            prop_assert_eq!(a, b);
        }
        let g = ExampleFamily::One.curve(5);
        let count4 = |c: &Curve<4>, n: [f64; 4]| {
            hyperplane_intersections(c, &Hyperplane::new(n).unwrap(), Default::default()).map(|r| r.total)
        };
        if let (Ok(a), Ok(b)) = (count4(&g, transpose_apply(&u4, &b4)), count4(&projective_image(&g, &u4), b4)) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn certificates_reverify(seed in 0u64..1000, c in 1.0f64..6.0) {
        let opts = CertificateOptions { seed, budget: 200, ..Default::default() };
        let g = ExampleFamily::One.curve(5);
        let cert = nonconvexity_certificate(&g, opts);
        prop_assert_eq!(cert.verdict, Verdict::NotConvex);
        prop_assert!(verify_certificate(&g, &cert).unwrap());
        let sigma3 = circle_sigma(c).unwrap().iterate(3.0);
        let cert = nonconvexity_certificate(&sigma3, opts);
        prop_assert_eq!(cert.verdict, Verdict::NotConvex);
        prop_assert!(cert.total >= 3);
        prop_assert!(verify_certificate(&sigma3, &cert).unwrap());
    }
}

#[test]
fn dualities_preserve_local_convexity() {
    for g in examples() {
        for h in [time_reversal(&g).unwrap(), arnold_dual(&g).unwrap()] {
            let report = is_locally_convex(&h, 512);
            assert!(report.holds, "{}: {report:?}", h.label());
        }
    }
    for c in [1.0, 3.0, 6.0] {
        let s = circle_sigma(c).unwrap();
        assert!(is_locally_convex(&time_reversal(&s).unwrap(), 512).holds);
        assert!(is_locally_convex(&arnold_dual(&s).unwrap(), 512).holds);
    }
}
