use crate::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{compute_bounds, DualState, LabeledProblem, SvmSolution};
use crate::error::{HullError, Result};
use crate::geometry::{dot, Hyperplane};
use crate::hull::PointSet;
use crate::report::{SolveReport, Status};

/// Curvature at or above this counts as flat and the step is rejected.
const ETA_FLOOR: f64 = -1e-12;

#[derive(Debug, Clone)]
pub struct SmoOptions {
    /// KKT tolerance.
    pub tol: f64,
    /// Cap on outer sweeps.
    pub max_sweeps: usize,
    /// Cap on `take_step` attempts, as a multiple of the problem size.
    pub attempts_per_point: usize,
    pub step_eps: f64,
    /// Seeds the random starting points of the partner loops.
    pub seed: u64,
    pub row_budget_bytes: usize,
    /// Record `W(alpha)` after every accepted step.
    pub record_objective: bool,
}

impl Default for SmoOptions {
    fn default() -> Self {
        SmoOptions {
            tol: 1e-3,
            max_sweeps: 10_000,
            attempts_per_point: 10_000,
            step_eps: 1e-12,
            seed: 0,
            row_budget_bytes: 256 << 20,
            record_objective: false,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SmoStats {
    pub sweeps: usize,
    pub attempts: usize,
    pub accepted: usize,
    pub row_misses: usize,
    /// `W(alpha)` after each accepted step, when recorded.
    pub objective_trace: Vec<f64>,
}

fn kernel_row(state: &mut DualState, problem: &LabeledProblem, i: usize) -> std::rc::Rc<Vec<f64>> {
    let pts = problem.points();
    state.rows.get(i, || pts.dots_with(pts.point(i)))
}

/// Jointly optimizes `(alpha_i1, alpha_i2)`. Returns whether the state
/// changed.
pub fn take_step(state: &mut DualState, problem: &LabeledProblem, i1: usize, i2: usize) -> bool {
    if i1 == i2 {
        return false;
    }
    let c = problem.c();
    let (a1, a2) = (state.alphas[i1], state.alphas[i2]);
    let (y1, y2) = (problem.label(i1), problem.label(i2));
    let (e1, e2) = (state.error_cache[i1], state.error_cache[i2]);
    let s = y1 * y2;
    let (lo, hi) = compute_bounds(a1, a2, y1, y2, c);
    if lo >= hi {
        return false;
    }
    let pts = problem.points();
    let k11 = pts.sq_norm(i1);
    let k22 = pts.sq_norm(i2);
    let k12 = dot(pts.point(i1), pts.point(i2));
    let eta = 2.0 * k12 - k11 - k22;
    if eta >= ETA_FLOOR {
        return false;
    }
    let mut a2_new = (a2 - y2 * (e1 - e2) / eta).clamp(lo, hi);
    let eps = state.step_eps;
    if (a2_new - a2).abs() < eps * (a2_new + a2 + eps) {
        return false;
    }
    let mut a1_new = a1 + s * (a2 - a2_new);
    // rounding can leave either multiplier a hair off its box edge, where
    // the KKT test would read it as free
    let snap = 1e-12 * (a1 + a2).max(if c.is_finite() { c } else { 0.0 });
    if a1_new < snap {
        a2_new += s * a1_new;
        a1_new = 0.0;
    } else if a1_new > c - snap {
        a2_new += s * (a1_new - c);
        a1_new = c;
    }
    if a2_new < snap {
        a2_new = 0.0;
    } else if a2_new > c - snap {
        a2_new = c;
    }
    let d1 = a1_new - a1;
    let d2 = a2_new - a2;

    let b1 = state.b - e1 - y1 * d1 * k11 - y2 * d2 * k12;
    let b2 = state.b - e2 - y1 * d1 * k12 - y2 * d2 * k22;
    let b_new = if a1_new > 0.0 && a1_new < c {
        b1
    } else if a2_new > 0.0 && a2_new < c {
        b2
    } else {
        0.5 * (b1 + b2)
    };
    let db = b_new - state.b;

    let r1 = kernel_row(state, problem, i1);
    let r2 = kernel_row(state, problem, i2);
    let (c1, c2) = (y1 * d1, y2 * d2);
    for ((e, g1), g2) in state.error_cache.iter_mut().zip(r1.iter()).zip(r2.iter()) {
        *e += c1 * g1 + c2 * g2 + db;
    }
    for ((w, x1), x2) in state.w.iter_mut().zip(pts.point(i1)).zip(pts.point(i2)) {
        *w += c1 * x1 + c2 * x2;
    }
    state.alphas[i1] = a1_new;
    state.alphas[i2] = a2_new;
    state.b = b_new;
    state.objective = state.alphas.iter().sum::<f64>() - 0.5 * dot(&state.w, &state.w);
    true
}

struct Counter<'a> {
    stats: &'a mut SmoStats,
    record: bool,
}

impl Counter<'_> {
    fn step(&mut self, state: &mut DualState, problem: &LabeledProblem, i1: usize, i2: usize) -> bool {
        self.stats.attempts += 1;
        let ok = take_step(state, problem, i1, i2);
        if ok {
            self.stats.accepted += 1;
            if self.record {
                self.stats.objective_trace.push(state.objective);
            }
        }
        ok
    }
}

fn examine(
    state: &mut DualState,
    problem: &LabeledProblem,
    i2: usize,
    tol: f64,
    rng: &mut impl Rng,
    counter: &mut Counter<'_>,
) -> usize {
    let c = problem.c();
    let y2 = problem.label(i2);
    let a2 = state.alphas[i2];
    let e2 = state.error_cache[i2];
    let r2 = e2 * y2;
    if !((r2 < -tol && a2 < c) || (r2 > tol && a2 > 0.0)) {
        return 0;
    }
    let n = problem.len();
    let non_bound: Vec<usize> = (0..n).filter(|&i| state.is_non_bound(i, c)).collect();
    if non_bound.len() > 1 {
        let mut best = None;
        let mut gap = -1.0;
        for &i in &non_bound {
            let g = (state.error_cache[i] - e2).abs();
            if g > gap {
                gap = g;
                best = Some(i);
            }
        }
        if let Some(i1) = best {
            if counter.step(state, problem, i1, i2) {
                return 1;
            }
        }
    }
    if !non_bound.is_empty() {
        let start = rng.random_range(0..non_bound.len());
        for k in 0..non_bound.len() {
            let i1 = non_bound[(start + k) % non_bound.len()];
            if counter.step(state, problem, i1, i2) {
                return 1;
            }
        }
    }
    let start = rng.random_range(0..n);
    for k in 0..n {
        if counter.step(state, problem, (start + k) % n, i2) {
            return 1;
        }
    }
    0
}

/// Screens `i2` against the KKT conditions and, if it violates them, tries
/// partners: the non-bound index maximizing `|E1 - E2|`, then all
/// non-bound indices, then every index, each loop from a random start.
pub fn examine_example(
    state: &mut DualState,
    problem: &LabeledProblem,
    i2: usize,
    tol: f64,
    rng: &mut impl Rng,
) -> usize {
    let mut stats = SmoStats::default();
    examine(
        state,
        problem,
        i2,
        tol,
        rng,
        &mut Counter {
            stats: &mut stats,
            record: false,
        },
    )
}

/// Runs the main loop: alternate sweeps over all indices and over non-bound
/// indices until a full sweep changes nothing.
pub fn smo_solve(problem: &LabeledProblem, opts: &SmoOptions) -> Result<SvmSolution> {
    if !(opts.tol > 0.0) {
        return Err(HullError::InvalidParameter(format!(
            "tol must be positive, got {}",
            opts.tol
        )));
    }
    let start = Instant::now();
    let n = problem.len();
    let row_bytes = n.max(1) * std::mem::size_of::<f64>();
    let mut state = DualState::with_rows(problem, opts.step_eps, opts.row_budget_bytes / row_bytes);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut stats = SmoStats::default();
    let max_attempts = opts.attempts_per_point.saturating_mul(n);
    let c = problem.c();

    let mut num_changed = 0;
    let mut examine_all = true;
    let mut counter = Counter {
        stats: &mut stats,
        record: opts.record_objective,
    };
    let converged = loop {
        if !(num_changed > 0 || examine_all) {
            break true;
        }
        if counter.stats.sweeps >= opts.max_sweeps || counter.stats.attempts >= max_attempts {
            break false;
        }
        num_changed = 0;
        for i in 0..n {
            if examine_all || state.is_non_bound(i, c) {
                num_changed += examine(&mut state, problem, i, opts.tol, &mut rng, &mut counter);
            }
        }
        counter.stats.sweeps += 1;
        state.refit_threshold(problem);
        if examine_all {
            examine_all = false;
        } else if num_changed == 0 {
            examine_all = true;
        }
    };
    stats.row_misses = state.row_misses();
    let wall_time = start.elapsed();
    finish(problem, state, stats, converged, wall_time)
}

fn finish(
    problem: &LabeledProblem,
    state: DualState,
    stats: SmoStats,
    converged: bool,
    wall_time: std::time::Duration,
) -> Result<SvmSolution> {
    let w = state.w.clone();
    let pts = problem.points();
    let (mut hi_neg, mut lo_pos) = (f64::NEG_INFINITY, f64::INFINITY);
    for k in 0..problem.len() {
        let v = dot(&w, pts.point(k));
        if problem.label(k) < 0.0 {
            hi_neg = hi_neg.max(v);
        } else {
            lo_pos = lo_pos.min(v);
        }
    }
    let b = -0.5 * (hi_neg + lo_pos);
    let wn = dot(&w, &w).sqrt();
    let distance = if wn > 0.0 { (lo_pos - hi_neg) / wn } else { 0.0 };
    let status = if !converged {
        Status::MaxIterations
    } else if distance > 0.0 {
        Status::Separated
    } else {
        Status::Intersecting
    };
    let top = state.alphas.iter().copied().fold(0.0, f64::max);
    let sparsity = state.alphas.iter().filter(|&&a| a > 1e-8 * top).count();
    let support_planes = if status == Status::Separated {
        Some((
            Hyperplane::new(w.clone(), hi_neg)?,
            Hyperplane::new(w.clone(), lo_pos)?,
        ))
    } else {
        None
    };
    let report = SolveReport {
        status,
        iterations: stats.sweeps,
        wall_time,
        distance_upper: distance,
        distance_lower: distance,
        sparsity,
        support_planes,
    };
    Ok(SvmSolution {
        w,
        b,
        threshold: state.b,
        alphas: state.alphas,
        report,
        stats,
    })
}

/// Hard- or soft-margin SVM between `V` (label -1) and `V'` (label +1).
pub fn smo_separate(a: &PointSet, b: &PointSet, c: f64, opts: &SmoOptions) -> Result<SvmSolution> {
    smo_solve(&LabeledProblem::from_sets(a, b, c)?, opts)
}
