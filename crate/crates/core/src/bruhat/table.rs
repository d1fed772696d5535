//! The 24 convex cells of Spin₄.
//!
//! A spin `z` is convex when `chop⁻(z) = ā = (-1, k)`, i.e. some locally
//! convex curve from `1` ends in its cell. Each row lists the cell
//! representative, its matrix and the cell `chop⁺` of the representative.

use super::perm::{parse_signed_perm, SignedPerm4};
use super::spin::{identify_cell_spin, SpinCellRep};
use crate::algebra::quaternion::{Quaternion, SpinPair, UnitQuaternion};
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexTableEntry {
    pub spin: SpinCellRep,
    pub matrix: SignedPerm4,
    pub future_spin: SpinCellRep,
    pub future_matrix: SignedPerm4,
    pub cell_dimension: usize,
}

const R: f64 = FRAC_1_SQRT_2;
const H: f64 = 0.5;

type Row = (&'static str, f64, [f64; 4], [f64; 4], [f64; 4], [f64; 4]);

#[rustfmt::skip]
const ROWS: [Row; 24] = [
    ("P_e;15",        1.0, [1.0, 0.0, 0.0, 0.0],   [-1.0, 0.0, 0.0, 0.0],  [-1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, -1.0]),
    ("P_(12);7",      R,   [1.0, -1.0, 0.0, 0.0],  [-1.0, -1.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0],  [0.0, 0.0, 1.0, 0.0]),
    ("P_(23);11",     R,   [1.0, 0.0, 0.0, -1.0],  [-1.0, 0.0, 0.0, 1.0],  [0.0, 0.0, 0.0, 1.0],  [-1.0, 0.0, 0.0, 0.0]),
    ("P_(34);13",     R,   [1.0, -1.0, 0.0, 0.0],  [-1.0, 1.0, 0.0, 0.0],  [0.0, 1.0, 0.0, 0.0],  [0.0, 0.0, -1.0, 0.0]),
    ("P_(234);9",     H,   [1.0, -1.0, 1.0, -1.0], [-1.0, 1.0, -1.0, 1.0], [0.0, 1.0, 0.0, 0.0],  [0.0, 0.0, -1.0, 0.0]),
    ("P_(243);15",    H,   [1.0, -1.0, -1.0, -1.0], [-1.0, 1.0, 1.0, 1.0], [0.0, 0.0, 0.0, 1.0],  [-1.0, 0.0, 0.0, 0.0]),
    ("P_(123);3",     H,   [1.0, -1.0, -1.0, -1.0], [-1.0, -1.0, -1.0, 1.0], [0.0, 0.0, 0.0, 1.0], [-1.0, 0.0, 0.0, 0.0]),
    ("P_(132);15",    H,   [1.0, -1.0, 1.0, -1.0], [-1.0, -1.0, 1.0, 1.0], [0.0, 1.0, 0.0, 0.0],  [0.0, 0.0, 1.0, 0.0]),
    ("P_(12)(34);5",  1.0, [0.0, -1.0, 0.0, 0.0],  [-1.0, 0.0, 0.0, 0.0],  [1.0, 0.0, 0.0, 0.0],  [0.0, 0.0, 0.0, -1.0]),
    ("P_(13);11",     R,   [0.0, -1.0, 0.0, -1.0], [0.0, -1.0, 0.0, 1.0],  [1.0, 0.0, 0.0, 0.0],  [0.0, 0.0, 0.0, 1.0]),
    ("P_(24);13",     R,   [0.0, -1.0, 0.0, -1.0], [0.0, 1.0, 0.0, 1.0],   [1.0, 0.0, 0.0, 0.0],  [0.0, 0.0, 0.0, 1.0]),
    ("P_(1234);1",    R,   [0.0, -1.0, 0.0, -1.0], [-1.0, 0.0, -1.0, 0.0], [1.0, 0.0, 0.0, 0.0],  [0.0, 0.0, 0.0, -1.0]),
    ("P_(1432);7",    R,   [0.0, -1.0, 0.0, -1.0], [-1.0, 0.0, 1.0, 0.0],  [1.0, 0.0, 0.0, 0.0],  [0.0, 0.0, 0.0, -1.0]),
    ("P_(1243);7",    R,   [0.0, -1.0, -1.0, 0.0], [-1.0, 0.0, 0.0, 1.0],  [0.0, 0.0, 0.0, 1.0],  [-1.0, 0.0, 0.0, 0.0]),
    ("P_(1342);13",   R,   [0.0, -1.0, 1.0, 0.0],  [-1.0, 0.0, 0.0, 1.0],  [0.0, 0.0, 0.0, -1.0], [-1.0, 0.0, 0.0, 0.0]),
    ("P_(134);9",     H,   [-1.0, -1.0, 1.0, -1.0], [-1.0, -1.0, -1.0, 1.0], [0.0, 0.0, 0.0, -1.0], [-1.0, 0.0, 0.0, 0.0]),
    ("P_(124);5",     H,   [-1.0, -1.0, -1.0, -1.0], [-1.0, 1.0, -1.0, 1.0], [0.0, -1.0, 0.0, 0.0], [0.0, 0.0, -1.0, 0.0]),
    ("P_(13)(24);15", 1.0, [0.0, -1.0, 0.0, 0.0],  [0.0, 0.0, 0.0, 1.0],   [1.0, 0.0, 0.0, 0.0],  [0.0, 0.0, 0.0, 1.0]),
    ("P_(143);3",     H,   [-1.0, -1.0, -1.0, -1.0], [-1.0, -1.0, 1.0, 1.0], [0.0, -1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]),
    ("P_(142);5",     H,   [-1.0, -1.0, 1.0, -1.0], [-1.0, 1.0, 1.0, 1.0], [0.0, 0.0, 0.0, -1.0], [-1.0, 0.0, 0.0, 0.0]),
    ("P_(14);1",      R,   [-1.0, 0.0, 0.0, -1.0], [-1.0, 0.0, 0.0, 1.0],  [0.0, 0.0, 0.0, -1.0], [-1.0, 0.0, 0.0, 0.0]),
    ("P_(1324);13",   R,   [-1.0, -1.0, 0.0, 0.0], [0.0, 0.0, -1.0, 1.0],  [0.0, -1.0, 0.0, 0.0], [0.0, 0.0, -1.0, 0.0]),
    ("P_(1423);7",    R,   [-1.0, -1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 1.0],   [0.0, -1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]),
    ("P_(14)(23);5",  1.0, [-1.0, 0.0, 0.0, 0.0],  [0.0, 0.0, 0.0, 1.0],   [-1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0]),
];

fn unit(scale: f64, q: [f64; 4]) -> UnitQuaternion {
    UnitQuaternion::normalize(Quaternion::from(q.map(|x| scale * x))).expect("nonzero table entry")
}

fn build() -> Vec<ConvexTableEntry> {
    ROWS.iter()
        .map(|&(name, scale, l, r, fl, fr)| {
            let matrix = parse_signed_perm::<4>(name).expect("table names parse");
            let spin = SpinCellRep { spin: SpinPair::new(unit(scale, l), unit(scale, r)), matrix };
            let future = SpinPair::new(unit(1.0, fl), unit(1.0, fr));
            let future_spin = SpinCellRep::new(future).expect("future spins lie over signed permutations");
            ConvexTableEntry {
                spin,
                matrix,
                future_spin,
                future_matrix: future_spin.matrix,
                cell_dimension: matrix.inversions(),
            }
        })
        .collect()
}

/// The 24 convex cells, ordered by dimension.
pub fn convex_table() -> &'static [ConvexTableEntry] {
    static TABLE: OnceLock<Vec<ConvexTableEntry>> = OnceLock::new();
    TABLE.get_or_init(build)
}

/// `ā = (-1, k)`, the representative of the open convex cell.
pub fn abar() -> SpinPair {
    SpinPair::new(-UnitQuaternion::ONE, UnitQuaternion::K)
}

/// Whether the cell of `z` is one of the 24 convex cells.
pub fn is_convex_spin(z: SpinPair) -> Result<bool> {
    let rep = identify_cell_spin(z)?;
    Ok(convex_table().iter().any(|e| e.spin.same_as(&rep, 1e-9)))
}

/// Whether `z` lies in the open cell of `ā`.
pub fn is_stably_convex_spin(z: SpinPair) -> Result<bool> {
    Ok(identify_cell_spin(z)?.spin.distance(abar()) < 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cover::pi4;
    use crate::bruhat::cell::{arnold_matrix, chop_minus, chop_plus};
    use crate::bruhat::spin::{chop_minus_spin, chop_plus_spin};

    #[test]
    fn dimensions() {
        let mut counts = [0; 7];
        for e in convex_table() {
            counts[e.cell_dimension] += 1;
        }
        assert_eq!(counts, [1, 3, 5, 6, 5, 3, 1]);
    }

    #[test]
    fn spins_cover_matrices() {
        let at = arnold_matrix::<4>().transpose();
        for e in convex_table() {
            assert!(pi4(e.spin.spin).max_abs_diff(&e.matrix.to_matrix()) < 1e-15, "{}", e.matrix);
            let q = e.matrix.to_matrix();
            assert_eq!(chop_minus(&q).unwrap(), at, "{}", e.matrix);
            assert_eq!(chop_plus(&q).unwrap(), e.future_matrix, "{}", e.matrix);
        }
    }

    #[test]
    fn spin_chops_match_table() {
        for e in convex_table() {
            let minus = chop_minus_spin(e.spin.spin).unwrap();
            assert!(minus.spin.distance(abar()) < 1e-12, "{}: {}", e.matrix, minus.spin);
            let plus = chop_plus_spin(e.spin.spin).unwrap();
            assert!(plus.same_as(&e.future_spin, 1e-12), "{}: {}", e.matrix, plus.spin);
        }
    }

    #[test]
    fn predicates() {
        assert!(is_stably_convex_spin(abar()).unwrap());
        let e0 = SpinPair::new(UnitQuaternion::ONE, -UnitQuaternion::ONE);
        assert!(is_convex_spin(e0).unwrap());
        assert!(!is_stably_convex_spin(e0).unwrap());
        assert!(!is_convex_spin(SpinPair::IDENTITY).unwrap());
    }
}
