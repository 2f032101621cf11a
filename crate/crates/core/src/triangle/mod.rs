//! The Triangle Algorithm for a pair of convex hulls.
//!
//! Phase I moves `p in conv(V)` and `p' in conv(V')` toward each other along
//! pivot segments until either they are close relative to the last pivot
//! distance or no pivot exists, in which case the perpendicular bisector of
//! `p p'` separates the hulls. Phase II shrinks the gap further using weak
//! pivots and reports distance bounds with a pair of supporting planes.

mod cache;
mod pivot;
mod solver;
mod zigzag;

pub use cache::{DotCache, Target};
pub use pivot::{find_pivot, support_extremes, PivotKind, PivotResult, Side};
pub use solver::{
    joint_step, solve, solve_from, ta1_solve, ta2_solve, Diagnostics, GapEstimate, Ta1Outcome, Ta1Result,
    TaOptions, TaOutcome, WitnessCertificate, WITNESS_TOL,
};
pub use zigzag::{PivotTag, ZigzagConfig, ZigzagGuard};
