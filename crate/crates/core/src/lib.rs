//! Intersection testing and distance approximation for pairs of convex
//! hulls of finite point sets.
//!
//! [`triangle::solve`] runs the Triangle Algorithm: it either finds a pair of
//! nearly coincident points (the hulls intersect) or a witness pair whose
//! bisector separates them, then refines the witness into distance bounds
//! and supporting hyperplanes. [`smo::smo_solve`] is a hard-margin SVM
//! baseline for the same separation problem, and [`oracle`] holds slow
//! reference solvers used by the tests.

pub mod csv_io;
pub mod error;
pub mod geometry;
pub mod hull;
pub mod instance;
pub mod oracle;
pub mod report;
mod rows;
pub mod smo;
pub mod triangle;

// std clocks panic in the browser
#[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
pub(crate) use std::time::Instant;
#[cfg(all(target_arch = "wasm32", target_os = "unknown"))]
pub(crate) use web_time::Instant;

pub use error::{HullError, Result};
pub use geometry::{Hyperplane, Point};
pub use hull::{ConvexIterate, PointSet};
pub use instance::{generate_two_balls, Instance, InstanceSpec};
pub use report::{SolveReport, Status};
