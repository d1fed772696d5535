use locconvex::algebra::{
    dpi3, dpi4, gram_schmidt_qr, lift_path, pi3, pi4, quat_exp, ImaginaryQuaternion, Mat,
    Mat3, Mat4, Quaternion, SpinPair, UnitQuaternion,
};
use proptest::prelude::*;

fn unit() -> impl Strategy<Value = UnitQuaternion> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("away from zero", |a| a.iter().map(|x| x * x).sum::<f64>() > 0.05)
        .prop_map(|a| UnitQuaternion::normalize(Quaternion::from(a)).unwrap())
}

fn imaginary(r: f64) -> impl Strategy<Value = ImaginaryQuaternion> {
    prop::array::uniform3(-r..r).prop_map(|[b, c, d]| ImaginaryQuaternion::new(b, c, d))
}

fn pair() -> impl Strategy<Value = SpinPair> {
    (unit(), unit()).prop_map(|(l, r)| SpinPair::new(l, r))
}

fn upper<const N: usize>() -> impl Strategy<Value = Mat<N>> {
    prop::collection::vec(-2.0f64..2.0, N * N).prop_map(|v| {
        let mut m = Mat::<N>::zeros();
        for i in 0..N {
            for j in i..N {
                m[(i, j)] = if i == j { 0.3 + v[i * N + j].abs() } else { v[i * N + j] };
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn covers_are_homomorphisms(z in unit(), w in unit(), p in pair(), q in pair()) {
        prop_assert!(pi3(z * w).max_abs_diff(&(pi3(z) * pi3(w))) < 1e-10);
        prop_assert!(pi4(p * q).max_abs_diff(&(pi4(p) * pi4(q))) < 1e-10);
    }

    #[test]
    fn diagonal_pairs_fix_the_real_axis(z in unit()) {
        let m = pi4(SpinPair::new(z, z));
        let r = pi3(z);
        prop_assert!((m[(0, 0)] - 1.0).abs() < 1e-10);
        for i in 0..3 {
            prop_assert!(m[(0, i + 1)].abs() < 1e-10 && m[(i + 1, 0)].abs() < 1e-10);
            for j in 0..3 {
                prop_assert!((m[(i + 1, j + 1)] - r[(i, j)]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn exponential_is_a_one_parameter_group(h in imaginary(2.0), s in -2.0f64..2.0, t in -2.0f64..2.0) {
        let lhs = quat_exp(h.scale(s + t));
        let rhs = quat_exp(h.scale(s)) * quat_exp(h.scale(t));
        prop_assert!(lhs.q().max_abs_diff(rhs.q()) < 1e-10);
    }

    #[test]
    fn differentials_match_finite_differences(hl in imaginary(1.0), hr in imaginary(1.0)) {
        let e = 1e-5;
        let fd3 = (pi3(quat_exp(hl.scale(e))) - pi3(quat_exp(hl.scale(-e)))).scaled(0.5 / e);
        prop_assert!(fd3.max_abs_diff(&dpi3(hl)) < 1e-6);
        let at = |s: f64| pi4(SpinPair::new(quat_exp(hl.scale(s)), quat_exp(hr.scale(s))));
        let fd4 = (at(e) - at(-e)).scaled(0.5 / e);
        prop_assert!(fd4.max_abs_diff(&dpi4(hl, hr)) < 1e-6);
    }

    #[test]
    fn gram_schmidt_factors_and_is_unique(p in pair(), r in upper::<4>(), r2 in upper::<4>()) {
        let q = pi4(p);
        let m = q * r;
        let (f, rr) = gram_schmidt_qr(&m).unwrap();
        prop_assert!((f * rr).max_abs_diff(&m) < 1e-12 * m.max_abs().max(1.0));
        prop_assert!(f.max_abs_diff(&q) < 1e-10);
        let (f2, _) = gram_schmidt_qr(&(f * r2)).unwrap();
        prop_assert!(f2.max_abs_diff(&f) < 1e-10);
    }

    #[test]
    fn lifted_paths_project_back(start in pair(), hl in imaginary(3.0), hr in imaginary(3.0), z in unit(), h in imaginary(3.0)) {
        let frames: Vec<Mat4> = (0..=200)
            .map(|k| {
                let s = k as f64 / 200.0;
                pi4(start * SpinPair::new(quat_exp(hl.scale(s)), quat_exp(hr.scale(s))))
            })
            .collect();
        let lifted = lift_path(&frames, start).unwrap();
        for (k, (m, w)) in frames.iter().zip(&lifted).enumerate() {
            prop_assert!(pi4(*w).max_abs_diff(m) < 1e-9);
            let s = k as f64 / 200.0;
            let exact = start * SpinPair::new(quat_exp(hl.scale(s)), quat_exp(hr.scale(s)));
            prop_assert!(w.distance(exact) < 1e-9);
        }
        let frames3: Vec<Mat3> = (0..=200).map(|k| pi3(z * quat_exp(h.scale(k as f64 / 200.0)))).collect();
        for (m, w) in frames3.iter().zip(&lift_path(&frames3, z).unwrap()) {
            prop_assert!(pi3(*w).max_abs_diff(m) < 1e-9);
        }
    }
}
