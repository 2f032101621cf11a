//! Experiment suites over generated two-ball instances.
//!
//! Every suite is a grid `dims x factors x seeds`; each instance is solved
//! by every selected algorithm and yields one row per algorithm. Rows come
//! back in grid order whatever the number of worker threads.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use hullsep_core::{generate_two_balls, HullError, InstanceSpec, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::run::{run, Algorithm, RunSummary, SolverSettings};

pub const CSV_HEADER: &str = "suite,dim,na,nb,factor,seed,algo,iters,time_s,distance,sparsity,status";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Separable pairs (factor 1.1) across dimensions.
    Dimension,
    /// Translation `(1 - k) * max diam` for each `k`, at a fixed dimension.
    Distance,
    /// Pairs pushed apart by less than their diameter (factor 0.9).
    Intersection,
}

impl Suite {
    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Dimension => "dimension",
            Suite::Distance => "distance",
            Suite::Intersection => "intersection",
        }
    }

    pub fn default_dims(&self) -> Vec<usize> {
        match self {
            Suite::Distance => vec![1000],
            _ => vec![2, 10, 50, 100],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dimension" => Ok(Suite::Dimension),
            "distance" => Ok(Suite::Distance),
            "intersection" => Ok(Suite::Intersection),
            _ => Err(format!(
                "unknown suite `{s}` (expected dimension, distance or intersection)"
            )),
        }
    }
}

/// One solver run on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub suite: String,
    pub dim: usize,
    pub na: usize,
    pub nb: usize,
    pub factor: f64,
    pub seed: u64,
    pub algo: String,
    pub iters: usize,
    pub time_s: f64,
    pub distance: f64,
    pub sparsity: usize,
    pub status: String,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub suite: Suite,
    pub dims: Vec<usize>,
    pub na: usize,
    pub nb: usize,
    /// Translation factor for the dimension and intersection suites.
    pub factor: Option<f64>,
    /// `k` values of the distance suite.
    pub ks: Vec<f64>,
    pub seeds: usize,
    pub base_seed: u64,
    /// Worker threads; 1 runs everything on the calling thread.
    pub jobs: usize,
    pub algorithms: Vec<Algorithm>,
    pub settings: SolverSettings,
}

impl BenchConfig {
    pub fn new(suite: Suite) -> Self {
        BenchConfig {
            suite,
            dims: suite.default_dims(),
            na: 200,
            nb: 200,
            factor: None,
            ks: vec![0.9, 0.7, 0.5],
            seeds: 3,
            base_seed: 0,
            jobs: 1,
            algorithms: vec![Algorithm::Ta, Algorithm::Smo],
            settings: SolverSettings::default(),
        }
    }

    pub fn factors(&self) -> Vec<f64> {
        match self.suite {
            Suite::Dimension => vec![self.factor.unwrap_or(1.1)],
            Suite::Intersection => vec![self.factor.unwrap_or(0.9)],
            // rounded so 1 - 0.9 prints as 0.1
            Suite::Distance => self
                .ks
                .iter()
                .map(|k| ((1.0 - k) * 1e12).round() / 1e12)
                .collect(),
        }
    }

    /// Instances in row order.
    pub fn instances(&self) -> Vec<InstanceSpec> {
        let mut out = Vec::new();
        for &dim in &self.dims {
            for &factor in &self.factors() {
                for s in 0..self.seeds as u64 {
                    out.push(InstanceSpec::new(
                        dim,
                        self.na,
                        self.nb,
                        factor,
                        self.base_seed + s,
                    ));
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        if self.dims.is_empty() || self.seeds == 0 || self.algorithms.is_empty() {
            return Err(HullError::InvalidParameter(
                "bench needs at least one dimension, seed and algorithm".into(),
            ));
        }
        if let Some(k) = self.ks.iter().find(|k| !(0.0..=1.0).contains(*k)) {
            return Err(HullError::InvalidParameter(format!(
                "k must lie in [0, 1], got {k}"
            )));
        }
        Ok(())
    }
}

fn row(suite: Suite, spec: &InstanceSpec, r: &RunSummary) -> ExperimentRow {
    ExperimentRow {
        suite: suite.as_str().to_string(),
        dim: spec.dim,
        na: spec.na,
        nb: spec.nb,
        factor: spec.translation_factor,
        seed: spec.seed,
        algo: r.algorithm.as_str().to_string(),
        iters: r.iterations,
        time_s: r.time_s,
        distance: r.distance,
        sparsity: r.sparsity,
        status: r.status.as_str().to_string(),
    }
}

fn run_instance(cfg: &BenchConfig, spec: &InstanceSpec) -> Result<Vec<ExperimentRow>> {
    let inst = generate_two_balls(spec)?;
    let settings = SolverSettings {
        seed: spec.seed,
        ..cfg.settings.clone()
    };
    cfg.algorithms
        .iter()
        .map(|&alg| run(alg, &inst.a, &inst.b, &settings).map(|r| row(cfg.suite, spec, &r)))
        .collect()
}

/// Runs every instance of the suite and returns the rows in grid order.
pub fn run_suite(cfg: &BenchConfig) -> Result<Vec<ExperimentRow>> {
    cfg.validate()?;
    let specs = cfg.instances();
    let chunks: Vec<Vec<ExperimentRow>> = if cfg.jobs <= 1 {
        specs
            .iter()
            .map(|s| run_instance(cfg, s))
            .collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| HullError::InvalidParameter(e.to_string()))?;
        pool.install(|| {
            specs
                .par_iter()
                .map(|s| run_instance(cfg, s))
                .collect::<Result<_>>()
        })?
    };
    Ok(chunks.into_iter().flatten().collect())
}

/// Writes rows as CSV, with the header unless `header` is false.
pub fn write_rows<W: Write>(rows: &[ExperimentRow], out: W, header: bool) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(header).from_writer(out);
    for r in rows {
        w.serialize(r).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows<R: std::io::Read>(input: R) -> Result<Vec<ExperimentRow>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(csv_error)
}

fn csv_error(e: csv::Error) -> HullError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => HullError::Io(io),
        other => HullError::InvalidParameter(format!("csv: {other:?}")),
    }
}

#[derive(Default)]
struct Group {
    runs: usize,
    iters: f64,
    time: f64,
    sparsity: f64,
    distance: f64,
    statuses: BTreeMap<String, usize>,
}

/// Per-configuration means in the columns `Iterations, Time(sec),
/// Sparsity, Distance`.
pub fn summarize(rows: &[ExperimentRow]) -> String {
    let mut order: Vec<(usize, String, String)> = Vec::new();
    let mut groups: BTreeMap<(usize, String, String), Group> = BTreeMap::new();
    for r in rows {
        let key = (r.dim, format!("{}", r.factor), r.algo.clone());
        let g = groups.entry(key.clone()).or_insert_with(|| {
            order.push(key);
            Group::default()
        });
        g.runs += 1;
        g.iters += r.iters as f64;
        g.time += r.time_s;
        g.sparsity += r.sparsity as f64;
        g.distance += r.distance;
        *g.statuses.entry(r.status.clone()).or_default() += 1;
    }
    let mut s = format!(
        "{:>6} {:>7} {:>4} {:>5} {:>11} {:>10} {:>9} {:>10}  {}\n",
        "dim", "factor", "algo", "runs", "Iterations", "Time(sec)", "Sparsity", "Distance", "status"
    );
    for key in order {
        let g = &groups[&key];
        let n = g.runs as f64;
        let statuses: Vec<String> = g.statuses.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        s.push_str(&format!(
            "{:>6} {:>7} {:>4} {:>5} {:>11.1} {:>10.4} {:>9.1} {:>10.6}  {}\n",
            key.0,
            key.1,
            key.2,
            g.runs,
            g.iters / n,
            g.time / n,
            g.sparsity / n,
            g.distance / n,
            statuses.join(" ")
        ));
    }
    s
}
