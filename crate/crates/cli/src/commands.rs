//! Subcommand implementations. Each returns the value to print.

use crate::Outcome;
use anyhow::{bail, Context};
use locconvex::algebra::{Mat, SpinCover, Dim};
use locconvex::bruhat::{
    abar, arnold_matrix, chop_minus, chop_minus_spin, chop_plus, chop_plus_spin, convex_table as table,
    identify_cell, identify_cell_lift, identify_cell_spin, parse_signed_perm, SignedPermutation,
};
use locconvex::convexity::{assess_convexity, nonconvexity_certificate, CertificateOptions, ConvexityVerdict, Verdict};
use locconvex::curves::{circle_sigma, Curve, ExampleFamily, DEFAULT_GRID};
use locconvex::decompose::{fuse as fuse_pair, split};
use locconvex::integrate::{solve_quasi_curve, solve_unique_curve, CoefficientPath, CoefficientSamples, DEFAULT_STEPS};
use locconvex::io::{sample_curve, CurveSamples, PairRecord, SpinExport, SpinRecord};
use locconvex::{Error, SpinPair, UnitQuaternion};
use serde::{Deserialize, Serialize};
use serde_json::json;

/// Grid used by the cell criterion when `--steps` is absent.
const CONVEXITY_STEPS: usize = 256;

fn invalid(message: impl Into<String>) -> anyhow::Error {
    Error::InvalidInput(message.into()).into()
}

fn parse_samples(text: &str) -> anyhow::Result<CurveSamples> {
    serde_json::from_str(text).context("expected curve samples")
}

pub fn example(name: &str, m: u32, c: f64, steps: Option<usize>) -> anyhow::Result<Outcome> {
    let steps = steps.unwrap_or(DEFAULT_GRID);
    if m == 0 {
        bail!(invalid("--m must be at least 1"));
    }
    let family = name.strip_prefix("gamma").and_then(|i| i.parse().ok()).and_then(ExampleFamily::from_index);
    let samples = match (family, name) {
        (Some(f), _) => sample_curve::<4, SpinPair>(&f.curve(m), steps)?,
        (None, "sigma") => {
            let curve = circle_sigma(c)?.iterate(m as f64);
            let label = if m == 1 { format!("sigma_{c}") } else { format!("sigma_{c}^{m}") };
            sample_curve::<3, UnitQuaternion>(&curve.with_label(label), steps)?
        }
        _ => bail!(invalid(format!("unknown example {name:?}; expected gamma1..gamma4 or sigma"))),
    };
    Outcome::samples(samples)
}

pub fn decompose(text: &str, steps: Option<usize>) -> anyhow::Result<Outcome> {
    let samples = parse_samples(text)?;
    let steps = steps.unwrap_or(samples.samples.len().saturating_sub(1).max(1));
    let pair = split(&samples.to_curve::<4>()?)?;
    Outcome::json(PairRecord::from_pair(&pair, steps)?)
}

pub fn fuse(text: &str, quasi: bool, steps: Option<usize>) -> anyhow::Result<Outcome> {
    let record: PairRecord = serde_json::from_str(text).context("expected a curve pair")?;
    let steps = steps.unwrap_or(record.left.samples.len().saturating_sub(1).max(1));
    let pair = record.to_pair()?;
    let fused = fuse_pair(&pair, !quasi)?;
    let mut samples = sample_curve::<4, SpinPair>(&fused.curve.clone().with_label("fused"), steps)?;
    samples.residuals.insert("endpoint_distance".into(), fused.endpoint().distance(pair.endpoint()));
    samples.residuals.insert("pair_speed_residual".into(), pair.speed_residual.0);
    Outcome::samples(samples)
}

/// Anything that names a Bruhat cell.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum CellInput {
    Matrix(Vec<Vec<f64>>),
    Spin(SpinRecord),
    Name(String),
}

fn parse_cell_input(text: &str) -> anyhow::Result<CellInput> {
    let trimmed = text.trim();
    if trimmed.starts_with("P_") {
        return Ok(CellInput::Name(trimmed.to_string()));
    }
    serde_json::from_str(trimmed).context("expected a matrix, a spin or a cell name")
}

fn square<const N: usize>(rows: &[Vec<f64>]) -> anyhow::Result<Mat<N>> {
    if rows.len() != N || rows.iter().any(|r| r.len() != N) {
        bail!(invalid(format!("expected a {N}×{N} matrix")));
    }
    let m = Mat::<N>(std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j])));
    if !m.is_special_orthogonal(1e-8) {
        bail!(invalid("matrix is not special orthogonal"));
    }
    Ok(m)
}

#[derive(Debug, Serialize)]
struct CellReport {
    cell: String,
    matrix: Vec<Vec<f64>>,
    dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    spin: Option<SpinRecord>,
}

impl CellReport {
    fn new<const N: usize>(p: &SignedPermutation<N>, spin: Option<SpinRecord>) -> Self {
        let m = p.to_matrix();
        CellReport {
            cell: p.to_string(),
            matrix: m.0.iter().map(|r| r.to_vec()).collect(),
            dimension: p.inversions(),
            spin,
        }
    }
}

pub fn classify(text: &str) -> anyhow::Result<Outcome> {
    let report = match parse_cell_input(text)? {
        CellInput::Matrix(rows) if rows.len() == 3 => CellReport::new(&identify_cell(&square::<3>(&rows)?)?.p, None),
        CellInput::Matrix(rows) => CellReport::new(&identify_cell(&square::<4>(&rows)?)?.p, None),
        CellInput::Spin(r) if r.right.is_none() => {
            let (rep, p) = identify_cell_lift::<3, UnitQuaternion>(r.to_quaternion()?)?;
            CellReport::new(&p, Some(rep.record()))
        }
        CellInput::Spin(r) => {
            let rep = identify_cell_spin(r.to_pair()?)?;
            CellReport::new(&rep.matrix, Some(rep.spin.record()))
        }
        CellInput::Name(name) => CellReport::new(&identify_cell(&parse_signed_perm::<4>(&name)?.to_matrix())?.p, None),
    };
    Outcome::json(report)
}

fn chop_matrix<const N: usize>(m: &Mat<N>, plus: bool) -> anyhow::Result<CellReport> {
    let p = if plus { chop_plus(m)? } else { chop_minus(m)? };
    Ok(CellReport::new(&p, None))
}

pub fn chop(text: &str, plus: bool) -> anyhow::Result<Outcome> {
    let report = match parse_cell_input(text)? {
        CellInput::Matrix(rows) if rows.len() == 3 => chop_matrix(&square::<3>(&rows)?, plus)?,
        CellInput::Matrix(rows) => chop_matrix(&square::<4>(&rows)?, plus)?,
        CellInput::Name(name) => chop_matrix(&parse_signed_perm::<4>(&name)?.to_matrix(), plus)?,
        CellInput::Spin(r) if r.right.is_none() => bail!(invalid("spin chopping needs a pair of quaternions")),
        CellInput::Spin(r) => {
            let z = r.to_pair()?;
            let rep = if plus { chop_plus_spin(z)? } else { chop_minus_spin(z)? };
            CellReport::new(&rep.matrix, Some(rep.spin.record()))
        }
    };
    Outcome::json(report)
}

pub fn convex_table(verify: bool) -> anyhow::Result<Outcome> {
    let at = arnold_matrix::<4>().transpose();
    let mut rows = Vec::new();
    let mut passed = 0;
    let mut dimensions = [0usize; 7];
    for e in table() {
        dimensions[e.cell_dimension] += 1;
        let mut row = json!({
            "cell": e.matrix.to_string(),
            "spin": e.spin.spin.record(),
            "dimension": e.cell_dimension,
            "future": e.future_matrix.to_string(),
            "future_spin": e.future_spin.spin.record(),
        });
        if verify {
            let m = e.matrix.to_matrix();
            let checks = json!({
                "projection": locconvex::algebra::pi4(e.spin.spin).max_abs_diff(&m) < 1e-15,
                "dimension": e.matrix.inversions() == e.cell_dimension,
                "chop_minus": chop_minus(&m)? == at,
                "chop_minus_spin": chop_minus_spin(e.spin.spin)?.spin.distance(abar()) < 1e-9,
                "chop_plus": chop_plus(&m)? == e.future_matrix,
                "chop_plus_spin": chop_plus_spin(e.spin.spin)?.same_as(&e.future_spin, 1e-9),
            });
            let pass = checks.as_object().is_some_and(|c| c.values().all(|v| v == true));
            passed += pass as usize;
            row["checks"] = checks;
            row["pass"] = json!(pass);
        }
        rows.push(row);
    }
    let total = rows.len();
    let mut out = json!({ "rows": rows, "total": total, "dimensions": dimensions });
    if verify {
        out["passed"] = json!(passed);
        if passed != total || dimensions != [1, 3, 5, 6, 5, 3, 1] {
            let mut outcome = Outcome::json(out)?;
            outcome.failed = true;
            return Ok(outcome);
        }
    }
    Outcome::json(out)
}

fn assess<const N: usize, S>(
    curve: &Curve<N>,
    certificate: bool,
    steps: usize,
    opts: CertificateOptions,
) -> anyhow::Result<Outcome>
where
    S: locconvex::algebra::Cover<N>,
{
    if certificate {
        let cert = nonconvexity_certificate(curve, opts);
        let inconclusive = cert.verdict == Verdict::Inconclusive;
        let mut outcome = Outcome::json(cert)?;
        outcome.inconclusive = inconclusive;
        Ok(outcome)
    } else {
        let verdict = assess_convexity::<N, S>(curve, steps, opts);
        let inconclusive = matches!(verdict, ConvexityVerdict::Inconclusive { .. });
        let mut outcome = Outcome::json(verdict)?;
        outcome.inconclusive = inconclusive;
        Ok(outcome)
    }
}

pub fn convexity(text: &str, certificate: bool, steps: Option<usize>, seed: u64) -> anyhow::Result<Outcome> {
    let samples = parse_samples(text)?;
    let steps = steps.unwrap_or(CONVEXITY_STEPS);
    let opts = CertificateOptions { seed, ..Default::default() };
    match samples.dimension {
        3 => assess::<3, UnitQuaternion>(&samples.to_curve::<3>()?, certificate, steps, opts),
        4 => assess::<4, SpinPair>(&samples.to_curve::<4>()?, certificate, steps, opts),
        d => bail!(invalid(format!("curves live in dimension 3 or 4, not {d}"))),
    }
}

fn integrate_n<const N: usize>(path: &CoefficientPath, quasi: bool, steps: usize, samples: usize) -> anyhow::Result<Outcome>
where
    Dim<N>: SpinCover<N>,
    locconvex::algebra::SpinOf<N>: SpinExport,
{
    let sol = if quasi { solve_quasi_curve::<N>(path, steps)? } else { solve_unique_curve::<N>(path, steps)? };
    let label = if quasi { "quasi_jacobian" } else { "jacobian" };
    let mut out = sample_curve::<N, locconvex::algebra::SpinOf<N>>(&sol.curve.clone().with_label(label), samples)?;
    out.residuals.insert("max_step_distance".into(), sol.grid.max_step_distance());
    out.residuals.insert("integration_steps".into(), steps as f64);
    Outcome::samples(out)
}

pub fn integrate(text: &str, quasi: bool, steps: Option<usize>, samples: usize) -> anyhow::Result<Outcome> {
    let coeffs: CoefficientSamples = serde_json::from_str(text).context("expected coefficient samples")?;
    let n = coeffs.n;
    let path = CoefficientPath::linear(coeffs)?;
    let steps = steps.unwrap_or(DEFAULT_STEPS);
    match n {
        2 => integrate_n::<3>(&path, quasi, steps, samples),
        3 => integrate_n::<4>(&path, quasi, steps, samples),
        _ => bail!(invalid(format!("coefficient paths need 2 or 3 rows, found {n}"))),
    }
}
