//! Signed permutation matrices and the `P_<cycles>;<code>` naming scheme.
//!
//! `P(e_i) = s_i e_{π(i)}`. The sign code is read column by column with the
//! first column as the most significant bit, `+` being 0 and `-` being 1, so
//! `P_e;15 = -I` in dimension four.

use crate::algebra::matrix::Mat;
use crate::error::{Error, Result};
use serde::de::{Deserialize, Deserializer, Error as _};
use serde::ser::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Signed permutation matrix of positive determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedPermutation<const N: usize> {
    image: [usize; N],
    signs: [i8; N],
}

pub type SignedPerm4 = SignedPermutation<4>;

fn permutation_sign(image: &[usize]) -> i8 {
    let mut sign = 1;
    for i in 0..image.len() {
        for j in i + 1..image.len() {
            if image[i] > image[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn is_bijection(image: &[usize]) -> bool {
    let mut seen = vec![false; image.len()];
    for &p in image {
        if p >= image.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

impl<const N: usize> SignedPermutation<N> {
    /// `image[j]` is the row of the nonzero entry in column `j` and
    /// `signs[j]` its sign.
    pub fn new(image: [usize; N], signs: [i8; N]) -> Result<Self> {
        if !is_bijection(&image) {
            return Err(Error::InvalidInput(format!("{image:?} is not a permutation")));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidInput(format!("signs must be ±1, got {signs:?}")));
        }
        let det = permutation_sign(&image) * signs.iter().product::<i8>();
        if det != 1 {
            return Err(Error::NegativeOrientation { det: det as f64 });
        }
        Ok(SignedPermutation { image, signs })
    }

    pub fn identity() -> Self {
        SignedPermutation { image: std::array::from_fn(|i| i), signs: [1; N] }
    }

    /// Row index of the nonzero entry of column `j`.
    pub fn image(&self) -> &[usize; N] {
        &self.image
    }

    /// Sign of the nonzero entry of column `j`.
    pub fn column_signs(&self) -> &[i8; N] {
        &self.signs
    }

    /// Column of the nonzero entry in row `i`.
    pub fn column_of_row(&self, i: usize) -> usize {
        self.image.iter().position(|&r| r == i).expect("bijection")
    }

    /// The nonzero entry of row `i`.
    pub fn entry_in_row(&self, i: usize) -> i8 {
        self.signs[self.column_of_row(i)]
    }

    pub fn to_matrix(&self) -> Mat<N> {
        let mut m = Mat::zeros();
        for j in 0..N {
            m[(self.image[j], j)] = self.signs[j] as f64;
        }
        m
    }

    /// Reads a signed permutation from a matrix whose entries are within
    /// `tol` of 0 or ±1.
    pub fn from_matrix(m: &Mat<N>, tol: f64) -> Result<Self> {
        let mut image = [0; N];
        let mut signs = [1; N];
        for j in 0..N {
            let mut found = None;
            for i in 0..N {
                let v = m[(i, j)];
                if (v.abs() - 1.0).abs() <= tol {
                    if found.is_some() {
                        return Err(Error::InvalidInput(format!("column {j} has two unit entries")));
                    }
                    found = Some((i, if v > 0.0 { 1 } else { -1 }));
                } else if v.abs() > tol {
                    return Err(Error::InvalidInput(format!("entry ({i},{j}) = {v} is not 0 or ±1")));
                }
            }
            let (i, s) = found.ok_or_else(|| Error::InvalidInput(format!("column {j} has no unit entry")))?;
            image[j] = i;
            signs[j] = s;
        }
        Self::new(image, signs)
    }

    /// Number of pairs `i < j` with `π(i) > π(j)`.
    pub fn inversions(&self) -> usize {
        let mut n = 0;
        for i in 0..N {
            for j in i + 1..N {
                if self.image[i] > self.image[j] {
                    n += 1;
                }
            }
        }
        n
    }

    /// Nonzero entries strictly north-east of the nonzero entry in row `i`.
    pub fn ne_count(&self, i: usize) -> usize {
        let j = self.column_of_row(i);
        (j + 1..N).filter(|&jj| self.image[jj] < i).count()
    }

    /// Nonzero entries strictly south-west of the nonzero entry in row `i`.
    pub fn sw_count(&self, i: usize) -> usize {
        let j = self.column_of_row(i);
        (0..j).filter(|&jj| self.image[jj] > i).count()
    }

    pub fn transpose(&self) -> Self {
        let mut image = [0; N];
        let mut signs = [1; N];
        for j in 0..N {
            image[self.image[j]] = j;
            signs[self.image[j]] = self.signs[j];
        }
        SignedPermutation { image, signs }
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let image = std::array::from_fn(|j| self.image[other.image[j]]);
        let signs = std::array::from_fn(|j| self.signs[other.image[j]] * other.signs[j]);
        SignedPermutation { image, signs }
    }

    /// The sign code: bit `N-1-j` is set when column `j` is negative.
    pub fn sign_code(&self) -> u32 {
        self.signs.iter().fold(0, |acc, &s| (acc << 1) | u32::from(s < 0))
    }

    /// Disjoint cycles of `π` in one-based notation, each starting at its
    /// smallest element, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; N];
        let mut out = Vec::new();
        for start in 0..N {
            if seen[start] || self.image[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cycle.push(k + 1);
                k = self.image[k];
            }
            out.push(cycle);
        }
        out
    }

    /// Every element of `B⁺_N`, ordered by permutation then sign code.
    pub fn all() -> Vec<Self> {
        let mut perms = Vec::new();
        let mut current: Vec<usize> = (0..N).collect();
        permutations(&mut current, 0, &mut perms);
        perms.sort();
        let mut out = Vec::new();
        for p in perms {
            let image: [usize; N] = p.try_into().expect("length N");
            for code in 0..(1u32 << N) {
                let signs = std::array::from_fn(|j| if code >> (N - 1 - j) & 1 == 1 { -1 } else { 1 });
                if let Ok(sp) = Self::new(image, signs) {
                    out.push(sp);
                }
            }
        }
        out
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

impl<const N: usize> fmt::Display for SignedPermutation<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P_")?;
        let cycles = self.cycles();
        if cycles.is_empty() {
            write!(f, "e")?;
        }
        for c in cycles {
            write!(f, "(")?;
            for k in c {
                write!(f, "{k}")?;
            }
            write!(f, ")")?;
        }
        write!(f, ";{}", self.sign_code())
    }
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::ParseError { position, message: message.into() }
}

/// Parses `P_<cycles>;<code>`, e.g. `P_(14)(23);5` or `P_e;0`.
pub fn parse_signed_perm<const N: usize>(name: &str) -> Result<SignedPermutation<N>> {
    let bytes = name.as_bytes();
    if !name.starts_with("P_") {
        return Err(parse_err(0, "expected `P_`"));
    }
    let mut pos = 2;
    let mut image: [usize; N] = std::array::from_fn(|i| i);
    let mut moved = [false; N];
    if bytes.get(pos) == Some(&b'e') {
        pos += 1;
    } else {
        if bytes.get(pos) != Some(&b'(') {
            return Err(parse_err(pos, "expected `e` or `(`"));
        }
        while bytes.get(pos) == Some(&b'(') {
            pos += 1;
            let mut cycle = Vec::new();
            while let Some(&b) = bytes.get(pos) {
                if b == b')' {
                    break;
                }
                let k = match (b as char).to_digit(10) {
                    Some(d) if (1..=N as u32).contains(&d) => d as usize - 1,
                    _ => return Err(parse_err(pos, format!("expected an index in 1..={N}"))),
                };
                if moved[k] || cycle.contains(&k) {
                    return Err(parse_err(pos, format!("index {} repeated", k + 1)));
                }
                cycle.push(k);
                pos += 1;
            }
            if bytes.get(pos) != Some(&b')') {
                return Err(parse_err(pos, "unterminated cycle"));
            }
            if cycle.len() < 2 {
                return Err(parse_err(pos, "cycles need at least two elements"));
            }
            for (idx, &k) in cycle.iter().enumerate() {
                image[k] = cycle[(idx + 1) % cycle.len()];
                moved[k] = true;
            }
            pos += 1;
        }
    }
    if bytes.get(pos) != Some(&b';') {
        return Err(parse_err(pos, "expected `;`"));
    }
    pos += 1;
    let digits = &name[pos..];
    let code: u32 = digits.parse().map_err(|_| parse_err(pos, "expected a decimal sign code"))?;
    if code >= 1 << N {
        return Err(parse_err(pos, format!("sign code must be below {}", 1u32 << N)));
    }
    let signs = std::array::from_fn(|j| if code >> (N - 1 - j) & 1 == 1 { -1 } else { 1 });
    SignedPermutation::new(image, signs).map_err(|_| parse_err(0, "determinant is -1"))
}

impl<const N: usize> FromStr for SignedPermutation<N> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_signed_perm(s)
    }
}

impl<const N: usize> Serialize for SignedPermutation<N> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de, const N: usize> Deserialize<'de> for SignedPermutation<N> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        name.parse().map_err(D::Error::custom)
    }
}

/// Diagonal matrix of signs with product one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiagonalSign<const N: usize>([i8; N]);

impl<const N: usize> DiagonalSign<N> {
    pub fn new(signs: [i8; N]) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) || signs.iter().product::<i8>() != 1 {
            return Err(Error::InvalidInput(format!("{signs:?} is not in Diag⁺")));
        }
        Ok(DiagonalSign(signs))
    }

    pub fn identity() -> Self {
        DiagonalSign([1; N])
    }

    pub fn signs(&self) -> &[i8; N] {
        &self.0
    }

    pub fn to_matrix(&self) -> Mat<N> {
        Mat::diag(&self.0.map(f64::from))
    }

    pub fn to_permutation(&self) -> SignedPermutation<N> {
        SignedPermutation { image: std::array::from_fn(|i| i), signs: self.0 }
    }
}
