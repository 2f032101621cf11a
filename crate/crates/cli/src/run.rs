use std::fmt;
use std::str::FromStr;

use hullsep_core::smo::{smo_separate, SmoOptions};
use hullsep_core::triangle::{solve, TaOptions};
use hullsep_core::{PointSet, Result, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Ta,
    Smo,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Ta => "ta",
            Algorithm::Smo => "smo",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ta" => Ok(Algorithm::Ta),
            "smo" => Ok(Algorithm::Smo),
            _ => Err(format!("unknown algorithm `{s}` (expected ta or smo)")),
        }
    }
}

/// Knobs shared by both solvers. `max_iters` caps triangle steps and SMO
/// sweeps alike.
#[derive(Debug, Clone)]
pub struct SolverSettings {
    pub epsilon: f64,
    pub tol: f64,
    pub c: f64,
    pub max_iters: usize,
    pub seed: u64,
    pub ta: TaOptions,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            epsilon: 1e-3,
            tol: 1e-3,
            c: f64::INFINITY,
            max_iters: 10_000,
            seed: 0,
            ta: TaOptions::default(),
        }
    }
}

impl SolverSettings {
    pub fn ta_options(&self) -> TaOptions {
        TaOptions {
            epsilon: self.epsilon,
            max_iters: self.max_iters,
            ..self.ta.clone()
        }
    }

    pub fn smo_options(&self) -> SmoOptions {
        SmoOptions {
            tol: self.tol,
            max_sweeps: self.max_iters,
            seed: self.seed,
            ..SmoOptions::default()
        }
    }
}

/// What one solve reports. `distance` is the plane gap along the solver's
/// normal when separated and zero otherwise.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub algorithm: Algorithm,
    pub status: Status,
    pub iterations: usize,
    pub time_s: f64,
    pub distance: f64,
    pub sparsity: usize,
    /// Triangle solver only: `d(p, p')` and the plane lower bound.
    pub delta: Option<f64>,
    pub delta_lower: Option<f64>,
}

pub fn run_ta(a: &PointSet, b: &PointSet, settings: &SolverSettings) -> Result<RunSummary> {
    let out = solve(a, b, &settings.ta_options())?;
    let r = &out.report;
    Ok(RunSummary {
        algorithm: Algorithm::Ta,
        status: r.status,
        iterations: r.iterations,
        time_s: r.wall_seconds(),
        distance: out.reported_distance().unwrap_or(0.0),
        sparsity: r.sparsity,
        delta: Some(r.distance_upper),
        delta_lower: Some(r.distance_lower),
    })
}

pub fn run_smo(a: &PointSet, b: &PointSet, settings: &SolverSettings) -> Result<RunSummary> {
    let sol = smo_separate(a, b, settings.c, &settings.smo_options())?;
    let r = &sol.report;
    Ok(RunSummary {
        algorithm: Algorithm::Smo,
        status: r.status,
        iterations: r.iterations,
        time_s: r.wall_seconds(),
        distance: if r.status == Status::Separated {
            r.distance_upper
        } else {
            0.0
        },
        sparsity: r.sparsity,
        delta: None,
        delta_lower: None,
    })
}

pub fn run(
    algorithm: Algorithm,
    a: &PointSet,
    b: &PointSet,
    settings: &SolverSettings,
) -> Result<RunSummary> {
    match algorithm {
        Algorithm::Ta => run_ta(a, b, settings),
        Algorithm::Smo => run_smo(a, b, settings),
    }
}

/// Process exit code for a solver status.
pub fn exit_code(status: Status) -> u8 {
    match status {
        Status::Separated => 0,
        Status::Intersecting => 1,
        Status::MaxIterations => 3,
    }
}
