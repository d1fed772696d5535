//! Signed permutations, Bruhat cells of SO₄ and Spin₄, and the convex cells.

pub mod cell;
pub mod perm;
pub mod spin;
pub mod table;

pub use cell::{
    ad_matrix, arnold_matrix, bruhat_action, chop_minus, chop_plus, delta_minus, delta_minus_perm, delta_plus,
    identify_cell, jplus, m_s_matrix, tr_matrix, tr_star, CellDecomposition,
};
pub use perm::{parse_signed_perm, DiagonalSign, SignedPerm4, SignedPermutation};
pub use spin::{
    ad_spin, chop_minus_spin, chop_plus_spin, chop_spin_at, identify_cell_lift, identify_cell_scaled, identify_cell_spin, model_velocity, open_convex_cell,
    tr_ad_residual, tr_spin, SpinCellRep,
};
pub use table::{abar, convex_table, is_convex_spin, is_stably_convex_spin, ConvexTableEntry};
