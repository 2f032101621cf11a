use std::fmt;
use std::time::Duration;

use crate::geometry::Hyperplane;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Intersecting,
    Separated,
    MaxIterations,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Intersecting => "intersecting",
            Status::Separated => "separated",
            Status::MaxIterations => "max_iterations",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome summary shared by both solvers.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub status: Status,
    pub iterations: usize,
    pub wall_time: Duration,
    /// `d(p, p')` for the triangle solver; the margin-plane gap for SMO.
    pub distance_upper: f64,
    /// Gap between the supporting hyperplanes (zero unless separated).
    pub distance_lower: f64,
    pub sparsity: usize,
    /// Supporting planes `(H_v, H_v')`, present when separated.
    pub support_planes: Option<(Hyperplane, Hyperplane)>,
}

impl SolveReport {
    pub fn wall_seconds(&self) -> f64 {
        self.wall_time.as_secs_f64()
    }
}
