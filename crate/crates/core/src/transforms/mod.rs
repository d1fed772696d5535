//! Operations on curves: time reversal, Arnold duality, chopping, adding
//! loops and relaxation-reflection.

pub mod duality;
pub mod loops;
pub mod relax;

pub use duality::{arnold_dual, chop_eps_minus, chop_eps_plus, chopped_cell, stable_chopped_cell, time_reversal};
pub use loops::{add_loops, default_loop_eps, LoopTemplate, DEFAULT_LOOP_EPS};
pub use relax::{hat_pair, model_axis, model_frame, relax_reflect, RRParams, BLEND_WIDTH};
