//! Locally convex curves on S² and S³.
//!
//! The crate covers the spin double covers of SO₃ and SO₄, Frenet frames
//! and their lifts, Bruhat cells of signed permutations, integration of
//! Jacobian curves from their logarithmic derivatives, the left/right
//! decomposition of curves on S³, convexity checks and the standard
//! operations on curves (time reversal, Arnold duality, chopping, adding
//! loops and relaxation-reflection).

pub mod algebra;
pub mod bruhat;
pub mod convexity;
pub mod curves;
pub mod decompose;
pub mod error;
pub mod integrate;
pub mod io;
pub mod transforms;

pub use algebra::{ImaginaryQuaternion, Mat, Mat3, Mat4, Quaternion, SpinPair, UnitQuaternion, Vector};
pub use bruhat::{SignedPerm4, SignedPermutation};
pub use curves::{Curve, Curve3, Curve4, ExampleFamily, Jet};
pub use decompose::{CurvePair, PairData};
pub use error::{Error, Result};
pub use integrate::CoefficientPath;
