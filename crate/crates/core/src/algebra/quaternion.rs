//! Quaternions `a + b i + c j + d k`, unit quaternions (the spin group
//! Spin₃ ≅ S³) and pairs of unit quaternions (Spin₄ ≅ S³ × S³).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Tolerance used when a quaternion is asserted to be unit.
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(v: [f64; 4]) -> Self {
        Quaternion::new(v[0], v[1], v[2], v[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.to_array()
    }
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion { a: 1.0, b: 0.0, c: 0.0, d: 0.0 };
    pub const I: Quaternion = Quaternion { a: 0.0, b: 1.0, c: 0.0, d: 0.0 };
    pub const J: Quaternion = Quaternion { a: 0.0, b: 0.0, c: 1.0, d: 0.0 };
    pub const K: Quaternion = Quaternion { a: 0.0, b: 0.0, c: 0.0, d: 1.0 };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn norm_sqr(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(s * self.a, s * self.b, s * self.c, s * self.d)
    }

    /// Euclidean inner product in R⁴.
    pub fn dot(self, o: Self) -> f64 {
        self.a * o.a + self.b * o.b + self.c * o.c + self.d * o.d
    }

    pub fn imaginary(self) -> ImaginaryQuaternion {
        ImaginaryQuaternion::new(self.b, self.c, self.d)
    }

    pub fn max_abs_diff(self, o: Self) -> f64 {
        let d = self - o;
        d.a.abs().max(d.b.abs()).max(d.c.abs()).max(d.d.abs())
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        let p = self;
        Quaternion::new(
            p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
            p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
            p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
            p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
        )
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, q: Quaternion) -> Quaternion {
        Quaternion::new(self.a + q.a, self.b + q.b, self.c + q.c, self.d + q.d)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, q: Quaternion) -> Quaternion {
        Quaternion::new(self.a - q.a, self.b - q.b, self.c - q.c, self.d - q.d)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

/// Pure imaginary quaternion `b i + c j + d k`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct ImaginaryQuaternion {
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl From<[f64; 3]> for ImaginaryQuaternion {
    fn from(v: [f64; 3]) -> Self {
        ImaginaryQuaternion::new(v[0], v[1], v[2])
    }
}

impl From<ImaginaryQuaternion> for [f64; 3] {
    fn from(h: ImaginaryQuaternion) -> Self {
        [h.b, h.c, h.d]
    }
}

impl ImaginaryQuaternion {
    pub const ZERO: ImaginaryQuaternion = ImaginaryQuaternion { b: 0.0, c: 0.0, d: 0.0 };

    pub const fn new(b: f64, c: f64, d: f64) -> Self {
        ImaginaryQuaternion { b, c, d }
    }

    pub fn norm(self) -> f64 {
        (self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        ImaginaryQuaternion::new(s * self.b, s * self.c, s * self.d)
    }

    pub fn to_quaternion(self) -> Quaternion {
        Quaternion::new(0.0, self.b, self.c, self.d)
    }

    pub fn max_abs_diff(self, o: Self) -> f64 {
        (self.b - o.b).abs().max((self.c - o.c).abs()).max((self.d - o.d).abs())
    }
}

/// Point of S³ ≅ Spin₃.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Quaternion", into = "Quaternion")]
pub struct UnitQuaternion(Quaternion);

impl TryFrom<Quaternion> for UnitQuaternion {
    type Error = Error;
    fn try_from(q: Quaternion) -> Result<Self> {
        UnitQuaternion::new(q)
    }
}

impl From<UnitQuaternion> for Quaternion {
    fn from(u: UnitQuaternion) -> Self {
        u.0
    }
}

impl UnitQuaternion {
    pub const ONE: UnitQuaternion = UnitQuaternion(Quaternion::ONE);
    pub const I: UnitQuaternion = UnitQuaternion(Quaternion::I);
    pub const J: UnitQuaternion = UnitQuaternion(Quaternion::J);
    pub const K: UnitQuaternion = UnitQuaternion(Quaternion::K);

    /// Accepts `q` if `| |q| - 1 | < 1e-12`.
    pub fn new(q: Quaternion) -> Result<Self> {
        let n = q.norm();
        if (n - 1.0).abs() < UNIT_TOL {
            Ok(UnitQuaternion(q))
        } else {
            Err(Error::NotUnit { norm: n })
        }
    }

    pub fn normalize(q: Quaternion) -> Result<Self> {
        let n = q.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::NotUnit { norm: n });
        }
        Ok(UnitQuaternion(q.scale(1.0 / n)))
    }

    /// Wraps `q` without checking; callers guarantee unit norm.
    pub(crate) fn new_unchecked(q: Quaternion) -> Self {
        UnitQuaternion(q)
    }

    pub fn q(self) -> Quaternion {
        self.0
    }

    pub fn conj(self) -> Self {
        UnitQuaternion(self.0.conj())
    }

    pub fn inverse(self) -> Self {
        self.conj()
    }

    pub fn dot(self, o: Self) -> f64 {
        self.0.dot(o.0)
    }

    /// Product followed by renormalisation, which removes roundoff drift in
    /// long products without moving the point by more than one ulp.
    pub fn mul_normalized(self, o: Self) -> Self {
        let p = self.0 * o.0;
        UnitQuaternion(p.scale(1.0 / p.norm()))
    }

    pub fn distance(self, o: Self) -> f64 {
        (self.0 - o.0).norm()
    }
}

impl Mul for UnitQuaternion {
    type Output = UnitQuaternion;
    fn mul(self, o: UnitQuaternion) -> UnitQuaternion {
        UnitQuaternion(self.0 * o.0)
    }
}

impl Neg for UnitQuaternion {
    type Output = UnitQuaternion;
    fn neg(self) -> UnitQuaternion {
        UnitQuaternion(-self.0)
    }
}

/// Principal logarithm of a unit quaternion, the inverse of [`quat_exp`]
/// for rotation angles below π.
pub fn quat_log(z: UnitQuaternion) -> ImaginaryQuaternion {
    let q = z.q();
    let v = (q.b * q.b + q.c * q.c + q.d * q.d).sqrt();
    let theta = v.atan2(q.a);
    let s = if v < 1e-12 { 1.0 / q.a } else { theta / v };
    ImaginaryQuaternion::new(s * q.b, s * q.c, s * q.d)
}

/// `exp(h) = cos|h| + sin|h| h/|h|`, with a Taylor expansion of `sin x / x`
/// below `|h| = 1e-8`.
pub fn quat_exp(h: ImaginaryQuaternion) -> UnitQuaternion {
    let theta = h.norm();
    let (cos, sinc) = if theta < 1e-8 {
        let t2 = theta * theta;
        (1.0 - 0.5 * t2, 1.0 - t2 / 6.0)
    } else {
        (theta.cos(), theta.sin() / theta)
    };
    UnitQuaternion(Quaternion::new(cos, sinc * h.b, sinc * h.c, sinc * h.d))
}

/// Point `(z_l, z_r)` of Spin₄.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinPair {
    pub left: UnitQuaternion,
    pub right: UnitQuaternion,
}

impl SpinPair {
    pub const IDENTITY: SpinPair = SpinPair { left: UnitQuaternion::ONE, right: UnitQuaternion::ONE };

    pub fn new(left: UnitQuaternion, right: UnitQuaternion) -> Self {
        SpinPair { left, right }
    }

    /// Builds a pair from raw quaternions, checking both are unit.
    pub fn from_quaternions(l: Quaternion, r: Quaternion) -> Result<Self> {
        Ok(SpinPair { left: UnitQuaternion::new(l)?, right: UnitQuaternion::new(r)? })
    }

    pub fn exp(hl: ImaginaryQuaternion, hr: ImaginaryQuaternion) -> Self {
        SpinPair { left: quat_exp(hl), right: quat_exp(hr) }
    }

    pub fn inverse(self) -> Self {
        SpinPair { left: self.left.conj(), right: self.right.conj() }
    }

    pub fn mul_normalized(self, o: Self) -> Self {
        SpinPair { left: self.left.mul_normalized(o.left), right: self.right.mul_normalized(o.right) }
    }

    /// Mean of the two componentwise inner products; lies in [-1, 1].
    pub fn dot(self, o: Self) -> f64 {
        0.5 * (self.left.dot(o.left) + self.right.dot(o.right))
    }

    /// Largest componentwise quaternion distance.
    pub fn distance(self, o: Self) -> f64 {
        self.left.distance(o.left).max(self.right.distance(o.right))
    }
}

impl Mul for SpinPair {
    type Output = SpinPair;
    fn mul(self, o: SpinPair) -> SpinPair {
        SpinPair { left: self.left * o.left, right: self.right * o.right }
    }
}

impl Neg for SpinPair {
    type Output = SpinPair;
    fn neg(self) -> SpinPair {
        SpinPair { left: -self.left, right: -self.right }
    }
}

fn symbolic_coefficient(x: f64) -> Option<(i32, &'static str)> {
    const TOL: f64 = 1e-9;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for (v, s) in [(0.0, "0"), (1.0, "1"), (0.5, "2"), (r, "√2")] {
        if (x.abs() - v).abs() < TOL {
            let sign = if v == 0.0 { 0 } else if x > 0.0 { 1 } else { -1 };
            return Some((sign, s));
        }
    }
    None
}

impl fmt::Display for Quaternion {
    /// Exact forms such as `(1-i)/√2` or `-k` when every coefficient is
    /// 0, ±1, ±1/2 or ±1/√2 with a common denominator; decimals otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.to_array().map(symbolic_coefficient);
        if coeffs.iter().all(Option::is_some) {
            let coeffs = coeffs.map(Option::unwrap);
            let dens: Vec<&str> = coeffs.iter().filter(|(s, _)| *s != 0).map(|(_, d)| *d).collect();
            if !dens.is_empty() && dens.iter().all(|d| *d == dens[0]) {
                let mut body = String::new();
                for ((sign, _), unit) in coeffs.iter().zip(["1", "i", "j", "k"]) {
                    if *sign == 0 {
                        continue;
                    }
                    if *sign < 0 {
                        body.push('-');
                    } else if !body.is_empty() {
                        body.push('+');
                    }
                    body.push_str(unit);
                }
                return match dens[0] {
                    "1" => write!(f, "{body}"),
                    d => write!(f, "({body})/{d}"),
                };
            }
        }
        write!(f, "{:.6}{:+.6}i{:+.6}j{:+.6}k", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for UnitQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for SpinPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn exp_series(h: ImaginaryQuaternion) -> Quaternion {
        let x = h.to_quaternion();
        let mut term = Quaternion::ONE;
        let mut sum = Quaternion::ONE;
        for n in 1..60 {
            term = (term * x).scale(1.0 / n as f64);
            sum = sum + term;
        }
        sum
    }

    #[test]
    fn exp_matches_series() {
        for h in [
            ImaginaryQuaternion::new(0.0, 0.0, PI),
            ImaginaryQuaternion::new(PI / 2.0, 0.0, 0.0),
            ImaginaryQuaternion::new(0.3, -1.1, 0.7),
        ] {
            assert!(quat_exp(h).q().max_abs_diff(exp_series(h)) < 1e-12);
        }
        assert_eq!(quat_exp(ImaginaryQuaternion::ZERO), UnitQuaternion::ONE);
        assert!(quat_exp(ImaginaryQuaternion::new(0.0, 0.0, PI)).q().max_abs_diff(-Quaternion::ONE) < 1e-15);
    }

    #[test]
    fn small_argument_branch_is_continuous() {
        let h = ImaginaryQuaternion::new(3e-9, -4e-9, 0.0);
        let below = quat_exp(h).q();
        let series = exp_series(h);
        assert!(below.max_abs_diff(series) < 1e-17);
        assert!((below.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hamilton_rules() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * j * k, -Quaternion::ONE);
    }

    #[test]
    fn unit_check() {
        assert!(UnitQuaternion::new(Quaternion::new(1.0, 1.0, 0.0, 0.0)).is_err());
        assert!(UnitQuaternion::normalize(Quaternion::default()).is_err());
    }

    #[test]
    fn display_forms() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(Quaternion::new(r, -r, 0.0, 0.0).to_string(), "(1-i)/√2");
        assert_eq!(Quaternion::new(-0.5, -0.5, 0.5, -0.5).to_string(), "(-1-i+j-k)/2");
        assert_eq!((-Quaternion::K).to_string(), "-k");
        let pair = SpinPair::new(-UnitQuaternion::ONE, UnitQuaternion::K);
        assert_eq!(pair.to_string(), "(-1, k)");
    }
}
