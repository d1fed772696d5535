//! Circles on S² and four families of locally convex curves on S³ with
//! constant curvature and torsion.

use super::{Curve, Curve3, Curve4, Jet};
use crate::algebra::matrix::Mat4;
use crate::algebra::quaternion::{SpinPair, UnitQuaternion};
use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// `(cos, sin)` of `ω t` differentiated `j` times.
fn trig(omega: f64, t: f64, j: i32) -> (f64, f64) {
    let phase = omega * t + j as f64 * FRAC_PI_2;
    let s = omega.powi(j);
    (s * phase.cos(), s * phase.sin())
}

/// The circle of length `c ∈ (0, 2π]` through `e₁` with Frenet frame `I` at
/// both ends. With `c = 2π sin ρ` its geodesic curvature is `cot ρ`.
pub fn circle_sigma(c: f64) -> Result<Curve3> {
    if !(c > 0.0 && c <= TAU * (1.0 + 1e-12)) {
        return Err(Error::BadLength { c });
    }
    let rho = (c / TAU).min(1.0).asin();
    let (sr, cr) = rho.sin_cos();
    Ok(Curve::new(format!("sigma_{c}"), move |t| {
        let d = |j: i32| {
            let (co, si) = trig(TAU, t, j);
            let centre = if j == 0 { [cr * cr, 0.0, cr * sr] } else { [0.0; 3] };
            [centre[0] + sr * sr * co, centre[1] + sr * si, centre[2] - sr * cr * co]
        };
        Jet { pos: d(0), d1: d(1), d2: d(2), d3: d(3) }
    }))
}

/// Curves of the form `exp(tΛ) e₁` for a symmetric tridiagonal `Λ`, written
/// as a superposition of two rotations with frequencies `fast` and `slow`.
fn two_frequency(label: String, w_fast: f64, fast: f64, slow: f64) -> Curve4 {
    let w_slow = 1.0 - w_fast;
    let r = (w_fast * w_slow).sqrt();
    Curve::new(label, move |t| {
        let d = |j: i32| {
            let (cf, sf) = trig(fast, t, j);
            let (cs, ss) = trig(slow, t, j);
            [w_fast * cf + w_slow * cs, r * (sf + ss), r * (cs - cf), w_slow * ss - w_fast * sf]
        };
        Jet { pos: d(0), d1: d(1), d2: d(2), d3: d(3) }
    })
}

/// The four example families `γ₁ᵐ … γ₄ᵐ` on S³.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExampleFamily {
    One,
    Two,
    Three,
    Four,
}

impl ExampleFamily {
    pub const ALL: [ExampleFamily; 4] = [Self::One, Self::Two, Self::Three, Self::Four];

    pub fn index(self) -> usize {
        match self {
            Self::One => 1,
            Self::Two => 2,
            Self::Three => 3,
            Self::Four => 4,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i.checked_sub(1)?).copied()
    }

    /// `(w_fast, fast, slow)` of the coordinate formula, per unit `m`.
    fn coefficients(self) -> (f64, f64, f64) {
        match self {
            Self::One => (0.25, 1.5 * PI, 0.5 * PI),
            Self::Two => (0.375, 2.5 * PI, 1.5 * PI),
            Self::Three => (1.0 / 3.0, 4.0 * PI, 2.0 * PI),
            Self::Four => (1.0 / 6.0, 5.0 * PI, PI),
        }
    }

    pub fn curve(self, m: u32) -> Curve4 {
        let (w, fast, slow) = self.coefficients();
        let m = m as f64;
        two_frequency(format!("gamma{}^{m}", self.index()), w, fast * m, slow * m)
    }

    pub fn kappa(self) -> f64 {
        match self {
            Self::One => 2.0 / 3f64.sqrt(),
            Self::Two => 2.0 / 15f64.sqrt(),
            Self::Three => 1.0 / 2f64.sqrt(),
            Self::Four => 4.0 / 5f64.sqrt(),
        }
    }

    pub fn tau(self) -> f64 {
        1.0
    }

    pub fn speed(self, m: u32) -> f64 {
        let m = m as f64;
        match self {
            Self::One => m * PI * 3f64.sqrt() / 2.0,
            Self::Two => m * PI * 15f64.sqrt() / 2.0,
            Self::Three => 2.0 * 2f64.sqrt() * PI * m,
            Self::Four => 5f64.sqrt() * PI * m,
        }
    }

    /// The constant logarithmic derivative.
    pub fn lambda(self, m: u32) -> Mat4 {
        let v = self.speed(m);
        Mat4::tridiagonal_skew(&[v, v * self.kappa(), v * self.tau()])
    }

    /// `(c, k)` of the left part `σ_cᵏ`.
    pub fn left_circle(self, m: u32) -> (f64, f64) {
        let m = m as f64;
        match self {
            Self::One => (PI, m),
            Self::Two => (PI / 2.0, 2.0 * m),
            Self::Three => (TAU / 3.0, 3.0 * m),
            Self::Four => (2.0 * TAU / 3.0, 3.0 * m),
        }
    }

    /// Number of turns `k` of the right part `σ_{2π}ᵏ`.
    pub fn right_turns(self, m: u32) -> f64 {
        let m = m as f64;
        match self {
            Self::One | Self::Two => m / 2.0,
            Self::Three => m,
            Self::Four => 2.0 * m,
        }
    }

    pub fn left_part(self, m: u32) -> Curve3 {
        let (c, k) = self.left_circle(m);
        circle_sigma(c).expect("valid length").iterate(k)
    }

    pub fn right_part(self, m: u32) -> Curve3 {
        circle_sigma(TAU).expect("valid length").iterate(self.right_turns(m))
    }

    /// Final lifted Frenet frame of `γᵐ`.
    pub fn endpoint(self, m: u32) -> SpinPair {
        let sign = |e: u32| if e % 2 == 0 { UnitQuaternion::ONE } else { -UnitQuaternion::ONE };
        let k_pow = match m % 4 {
            0 => UnitQuaternion::ONE,
            1 => UnitQuaternion::K,
            2 => -UnitQuaternion::ONE,
            _ => -UnitQuaternion::K,
        };
        match self {
            Self::One => SpinPair::new(sign(m), k_pow),
            Self::Two => SpinPair::new(UnitQuaternion::ONE, k_pow),
            Self::Three => SpinPair::new(sign(3 * m), sign(m)),
            Self::Four => SpinPair::new(sign(3 * m), UnitQuaternion::ONE),
        }
    }
}
