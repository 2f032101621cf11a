//! Library side of the `hullsep` binary: solver runs reduced to one row
//! each, and the benchmark suites built from them.

pub mod bench;
pub mod run;

pub use bench::{run_suite, summarize, write_rows, BenchConfig, ExperimentRow, Suite};
pub use run::{run_smo, run_ta, Algorithm, RunSummary, SolverSettings};

/// Environment variable overriding the default seed.
pub const SEED_ENV: &str = "HULLSEP_SEED";

/// Seed from `HULLSEP_SEED` if set and parseable, else `fallback`.
pub fn default_seed(fallback: u64) -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(fallback)
}
