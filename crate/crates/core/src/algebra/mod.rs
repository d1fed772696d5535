//! Matrices, quaternions, the spin covers of SO₃ and SO₄, Gram–Schmidt and
//! path lifting.

pub mod cover;
pub mod lift;
pub mod matrix;
pub mod qr;
pub mod quaternion;

pub use cover::{dpi3, dpi4, exp_so3, exp_so4, pi3, pi4, so3_split, so4_split, spin3_from_matrix, spin4_from_matrix};
pub use lift::{lift_continuous, lift_path, lift_path_so3, lift_path_so4, nearest_preimage, Cover, Dim, SpinCover, SpinOf};
pub use matrix::{Mat, Mat3, Mat4, Vector};
pub use qr::{gram_schmidt_complete, gram_schmidt_qr};
pub use quaternion::{quat_exp, quat_log, ImaginaryQuaternion, Quaternion, SpinPair, UnitQuaternion};
