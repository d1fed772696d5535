use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("singular input: pivot {pivot} has norm {norm:e}")]
    SingularInput { pivot: usize, norm: f64 },
    #[error("matrix has non-positive determinant {det:e}")]
    NegativeOrientation { det: f64 },
    #[error("matrix is not skew-symmetric (residual {residual:e})")]
    NotSkew { residual: f64 },
    #[error("quaternion is not unit (norm {norm})")]
    NotUnit { norm: f64 },
    #[error("lifting step {index} is too large (inner product {inner:.6})")]
    StepTooLarge { index: usize, inner: f64 },
    #[error("no pivot above tolerance in column {column}")]
    DegeneratePivot { column: usize },
    #[error("spin chop did not stabilise before h = {h:e}")]
    NoStableCell { h: f64 },
    #[error("bad signature: m = {m}, s = {s}")]
    BadSignature { m: usize, s: i64 },
    #[error("parse error at position {position}: {message}")]
    ParseError { position: usize, message: String },
    #[error("curve is not generic at t = {t}")]
    NotGeneric { t: f64 },
    #[error("circle length {c} outside (0, 2π]")]
    BadLength { c: f64 },
    #[error("coefficient c{index} is not positive at t = {t} (value {value:e})")]
    NonPositiveCoefficient { index: usize, t: f64, value: f64 },
    #[error("holonomic condition `{which}` fails at t = {t}")]
    ConditionViolated { which: &'static str, t: f64 },
    #[error("curve pair condition `{which}` fails at t = {t}")]
    PairConditionViolated { which: &'static str, t: f64 },
    #[error("tangency multiplicity is ambiguous at t = {t}")]
    TangencyUnresolved { t: f64 },
    #[error("first coordinate vanishes at t = {t}")]
    FirstCoordinateVanishes { t: f64 },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("stereographic image is not immersed at t = {t}")]
    ImmersionLost { t: f64 },
    #[error("loop window [{lo}, {hi}] leaves [0, 1]")]
    WindowOverflow { lo: f64, hi: f64 },
    #[error("curvature {kappa} does not exceed the relaxation at t = {t}")]
    CurvatureUnderflow { t: f64, kappa: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
