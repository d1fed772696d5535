//! Serializable records for curve samples and pairs.

use crate::algebra::lift::Cover;
use crate::algebra::matrix::Mat;
use crate::algebra::quaternion::{Quaternion, SpinPair, UnitQuaternion};
use crate::curves::{frenet_path, lifted_frenet_path, Curve};
use crate::decompose::{CurvePair, PairData};
use crate::error::{Error, Result};
use crate::integrate::curve_from_jacobian;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Serde adapter for `[f64; N]` with a const `N`.
pub mod array {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer, const N: usize>(v: &[f64; N], s: S) -> Result<S::Ok, S::Error> {
        v.as_slice().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(d: D) -> Result<[f64; N], D::Error> {
        let v = Vec::<f64>::deserialize(d)?;
        v.try_into().map_err(|v: Vec<f64>| D::Error::invalid_length(v.len(), &"a fixed-length array"))
    }
}

/// Lifted frame at one sample: a single quaternion on S², a pair on S³.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinRecord {
    pub left: [f64; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<[f64; 4]>,
}

/// Conversion of spins into sample records.
pub trait SpinExport {
    fn record(&self) -> SpinRecord;
}

impl SpinExport for UnitQuaternion {
    fn record(&self) -> SpinRecord {
        SpinRecord { left: self.q().to_array(), right: None }
    }
}

impl SpinExport for SpinPair {
    fn record(&self) -> SpinRecord {
        SpinRecord { left: self.left.q().to_array(), right: Some(self.right.q().to_array()) }
    }
}

impl SpinRecord {
    pub fn to_quaternion(&self) -> Result<UnitQuaternion> {
        UnitQuaternion::new(Quaternion::from(self.left))
    }

    pub fn to_pair(&self) -> Result<SpinPair> {
        let right = self.right.ok_or_else(|| Error::InvalidInput("spin record has no right component".into()))?;
        SpinPair::from_quaternions(Quaternion::from(self.left), Quaternion::from(right))
    }
}

/// One sample of a curve with its Frenet data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub t: f64,
    pub gamma: Vec<f64>,
    pub speed: f64,
    pub kappa: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    pub frame: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spin: Option<SpinRecord>,
}

/// A sampled curve on the uniform grid `k / steps`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSamples {
    pub label: String,
    /// Ambient dimension `n + 1`.
    pub dimension: usize,
    pub samples: Vec<CurveSample>,
    /// Named numerical residuals of the computation that produced the
    /// samples.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub residuals: BTreeMap<String, f64>,
}

/// Samples a curve on `steps + 1` uniform points. Spins are included when
/// the frame at `t = 0` is the identity.
pub fn sample_curve<const N: usize, S: Cover<N> + SpinExport>(curve: &Curve<N>, steps: usize) -> Result<CurveSamples> {
    let path = frenet_path(curve, steps)?;
    let spins = lifted_frenet_path::<N, S>(curve, steps).ok();
    let samples = path
        .iter()
        .enumerate()
        .map(|(k, s)| CurveSample {
            t: s.t,
            gamma: s.frame.column(0).to_vec(),
            speed: s.speed,
            kappa: s.kappa,
            tau: s.tau,
            frame: s.frame.0.iter().map(|r| r.to_vec()).collect(),
            spin: spins.as_ref().map(|z| z[k].record()),
        })
        .collect();
    let mut out = CurveSamples { label: curve.label().to_string(), dimension: N, samples, residuals: BTreeMap::new() };
    out.residuals.insert("frame_orthogonality".into(), out.orthogonality_defect());
    Ok(out)
}

impl CurveSamples {
    /// Largest entry of `FᵀF − I` over the sampled frames.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.dimension;
        self.samples
            .iter()
            .flat_map(|s| {
                let f = &s.frame;
                (0..n).flat_map(move |i| {
                    (0..n).map(move |j| {
                        let dot: f64 = (0..n).map(|k| f[k][i] * f[k][j]).sum();
                        (dot - if i == j { 1.0 } else { 0.0 }).abs()
                    })
                })
            })
            .fold(0.0, f64::max)
    }

    /// Frames of the samples, which must be uniformly spaced on `[0, 1]`.
    pub fn frames<const N: usize>(&self) -> Result<Vec<Mat<N>>> {
        if self.dimension != N {
            return Err(Error::InvalidInput(format!("expected dimension {N}, found {}", self.dimension)));
        }
        let steps = self.samples.len().saturating_sub(1).max(1) as f64;
        self.samples
            .iter()
            .enumerate()
            .map(|(k, s)| {
                if (s.t - k as f64 / steps).abs() > 1e-9 {
                    return Err(Error::InvalidInput(format!("sample {k} is not on the uniform grid")));
                }
                if s.frame.len() != N || s.frame.iter().any(|r| r.len() != N) {
                    return Err(Error::InvalidInput(format!("sample {k} has a malformed frame")));
                }
                Ok(Mat(std::array::from_fn(|i| std::array::from_fn(|j| s.frame[i][j]))))
            })
            .collect()
    }

    /// The curve through the sampled frames.
    pub fn to_curve<const N: usize>(&self) -> Result<Curve<N>>
    where
        crate::algebra::lift::Dim<N>: crate::algebra::lift::SpinCover<N>,
    {
        Ok(curve_from_jacobian(&self.frames::<N>()?)?.with_label(self.label.clone()))
    }

    /// Column names of the flattened CSV form.
    pub fn csv_header(&self) -> Vec<String> {
        let n = self.dimension;
        let mut h = vec!["t".to_string()];
        h.extend((1..=n).map(|i| format!("x{i}")));
        h.extend(["speed", "kappa", "tau"].map(String::from));
        h.extend((1..=n).flat_map(|i| (1..=n).map(move |j| format!("f{i}{j}"))));
        h.extend(["l0", "l1", "l2", "l3", "r0", "r1", "r2", "r3"].map(String::from));
        h
    }

    /// Flattened rows; missing values are empty strings.
    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        let f = |x: f64| format!("{x:.17e}");
        self.samples
            .iter()
            .map(|s| {
                let mut row = vec![f(s.t)];
                row.extend(s.gamma.iter().map(|&x| f(x)));
                row.push(f(s.speed));
                row.push(f(s.kappa));
                row.push(s.tau.map(f).unwrap_or_default());
                row.extend(s.frame.iter().flatten().map(|&x| f(x)));
                let spin = s.spin.as_ref();
                row.extend((0..4).map(|i| spin.map(|z| f(z.left[i])).unwrap_or_default()));
                row.extend((0..4).map(|i| spin.and_then(|z| z.right).map(|r| f(r[i])).unwrap_or_default()));
                row
            })
            .collect()
    }
}

/// A curve pair: both parts as sample streams, the pair data and the
/// shared-speed residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub left: CurveSamples,
    pub right: CurveSamples,
    pub left_end: [f64; 4],
    pub right_end: [f64; 4],
    pub data: PairData,
    pub speed_residual: f64,
}

impl PairRecord {
    pub fn from_pair(pair: &CurvePair, steps: usize) -> Result<Self> {
        let left = sample_curve::<3, UnitQuaternion>(&pair.left, steps)?;
        let right = sample_curve::<3, UnitQuaternion>(&pair.right, steps)?;
        let speed_residual = left
            .samples
            .iter()
            .zip(&right.samples)
            .map(|(l, r)| (l.speed - r.speed).abs() / l.speed.max(r.speed))
            .fold(0.0, f64::max);
        Ok(PairRecord {
            left,
            right,
            left_end: pair.left_end.q().to_array(),
            right_end: pair.right_end.q().to_array(),
            data: pair.data.clone(),
            speed_residual,
        })
    }

    /// Rebuilds both parts from their sampled frames.
    pub fn to_pair(&self) -> Result<CurvePair> {
        let left_end = UnitQuaternion::new(Quaternion::from(self.left_end))?;
        let right_end = UnitQuaternion::new(Quaternion::from(self.right_end))?;
        let samples = self.left.samples.len().saturating_sub(1).max(1);
        CurvePair::with_endpoints(self.left.to_curve::<3>()?, self.right.to_curve::<3>()?, left_end, right_end, samples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::ExampleFamily;

    #[test]
    fn samples_round_trip_through_frames() {
        let curve = ExampleFamily::Two.curve(1);
        let samples = sample_curve::<4, SpinPair>(&curve, 2048).unwrap();
        assert!(samples.samples.iter().all(|s| s.spin.is_some()));
        let end = samples.samples.last().unwrap().spin.unwrap().to_pair().unwrap();
        assert!(end.distance(ExampleFamily::Two.endpoint(1)) < 1e-9);
        let rebuilt = samples.to_curve::<4>().unwrap();
        for t in [0.1, 0.5, 0.93] {
            let (p, q) = (rebuilt.point(t), curve.point(t));
            assert!((0..4).all(|i| (p[i] - q[i]).abs() < 1e-6), "t = {t}");
        }
        assert_eq!(samples.csv_header().len(), samples.csv_rows()[0].len());
        assert!(samples.residuals["frame_orthogonality"] < 1e-12);
    }

    #[test]
    fn pair_records_round_trip() {
        let pair = crate::decompose::split(&ExampleFamily::One.curve(1)).unwrap();
        let record = PairRecord::from_pair(&pair, 1024).unwrap();
        let json = serde_json::to_string(&record).unwrap();
        let back: PairRecord = serde_json::from_str(&json).unwrap();
        let rebuilt = back.to_pair().unwrap();
        assert!(rebuilt.endpoint().distance(pair.endpoint()) < 1e-12);
        let fused = crate::decompose::fuse(&rebuilt, true).unwrap();
        for t in [0.2, 0.7] {
            let (p, q) = (fused.curve.point(t), ExampleFamily::One.curve(1).point(t));
            assert!((0..4).all(|i| (p[i] - q[i]).abs() < 1e-6), "t = {t}");
        }
    }
}
