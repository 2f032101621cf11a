//! Sequential minimal optimization for the linear SVM dual
//!
//! ```text
//! max W(a) = sum a_i - 1/2 sum_ij y_i y_j a_i a_j x_i.x_j
//! s.t. 0 <= a_i <= C, sum a_i y_i = 0
//! ```
//!
//! with `f(x) = w.x + b` and `w = sum a_i y_i x_i`. `C` may be infinite
//! (hard margin).

mod solver;

pub use solver::{examine_example, smo_separate, smo_solve, take_step, SmoOptions, SmoStats};

use crate::error::{HullError, Result};
use crate::geometry::dot;
use crate::hull::PointSet;
use crate::report::SolveReport;
use crate::rows::RowCache;

/// Label of `V` in a problem built by [`LabeledProblem::from_sets`];
/// `V'` gets `+1`.
pub const LABEL_A: f64 = -1.0;

#[derive(Debug, Clone)]
pub struct LabeledProblem {
    points: PointSet,
    labels: Vec<f64>,
    c: f64,
}

impl LabeledProblem {
    pub fn new(points: PointSet, labels: Vec<i8>, c: f64) -> Result<Self> {
        if labels.len() != points.len() {
            return Err(HullError::DimensionMismatch {
                expected: points.len(),
                found: labels.len(),
            });
        }
        if let Some(bad) = labels.iter().find(|&&y| y != 1 && y != -1) {
            return Err(HullError::InvalidParameter(format!(
                "label {bad} is not +1 or -1"
            )));
        }
        if !labels.contains(&1) || !labels.contains(&-1) {
            return Err(HullError::SingleClass);
        }
        if !(c > 0.0) {
            return Err(HullError::InvalidParameter(format!(
                "C must be positive, got {c}"
            )));
        }
        Ok(LabeledProblem {
            points,
            labels: labels.into_iter().map(f64::from).collect(),
            c,
        })
    }

    /// Merges `V` (label -1) and `V'` (label +1).
    pub fn from_sets(a: &PointSet, b: &PointSet, c: f64) -> Result<Self> {
        a.check_same_dim(b)?;
        let mut flat = a.as_flat().to_vec();
        flat.extend_from_slice(b.as_flat());
        let points = PointSet::from_flat(a.dim(), flat)?;
        let labels = std::iter::repeat_n(-1, a.len())
            .chain(std::iter::repeat_n(1, b.len()))
            .collect();
        LabeledProblem::new(points, labels, c)
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> f64 {
        self.labels[i]
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `f(x_k) = w.x_k + b`
    pub fn decision(&self, w: &[f64], b: f64, k: usize) -> f64 {
        dot(w, self.points.point(k)) + b
    }
}

/// Dual iterate with its error cache `E_k = f(x_k) - y_k`.
#[derive(Debug)]
pub struct DualState {
    pub alphas: Vec<f64>,
    pub b: f64,
    pub error_cache: Vec<f64>,
    /// `W(alpha)`, kept as `sum alpha - |w|^2 / 2`.
    pub objective: f64,
    w: Vec<f64>,
    step_eps: f64,
    rows: RowCache<usize, Vec<f64>>,
}

impl DualState {
    /// `alpha = 0`, `b = 0`.
    pub fn new(problem: &LabeledProblem) -> Self {
        DualState::with_rows(problem, 1e-12, 4096)
    }

    /// `step_eps` is the relative size below which a step counts as no
    /// progress; `row_capacity` bounds the number of cached Gram rows.
    pub fn with_rows(problem: &LabeledProblem, step_eps: f64, row_capacity: usize) -> Self {
        DualState {
            alphas: vec![0.0; problem.len()],
            b: 0.0,
            error_cache: problem.labels.iter().map(|y| -y).collect(),
            objective: 0.0,
            w: vec![0.0; problem.points.dim()],
            step_eps,
            rows: RowCache::new(row_capacity),
        }
    }

    /// Builds a state at given multipliers, recomputing `w`, the objective
    /// and the error cache.
    pub fn from_alphas(problem: &LabeledProblem, alphas: Vec<f64>, b: f64) -> Result<Self> {
        if alphas.len() != problem.len() {
            return Err(HullError::DimensionMismatch {
                expected: problem.len(),
                found: alphas.len(),
            });
        }
        let mut s = DualState::new(problem);
        s.alphas = alphas;
        s.b = b;
        s.recompute(problem);
        Ok(s)
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn row_misses(&self) -> usize {
        self.rows.misses()
    }

    /// Recomputes `w`, the objective and every cached error from `alphas`.
    pub fn recompute(&mut self, problem: &LabeledProblem) {
        self.w = weight_vector(problem, &self.alphas);
        self.objective = self.alphas.iter().sum::<f64>() - 0.5 * dot(&self.w, &self.w);
        for k in 0..problem.len() {
            self.error_cache[k] = problem.decision(&self.w, self.b, k) - problem.label(k);
        }
    }

    /// Largest gap between the cached errors and a recomputation.
    pub fn error_deviation(&self, problem: &LabeledProblem) -> f64 {
        let w = weight_vector(problem, &self.alphas);
        (0..problem.len())
            .map(|k| (problem.decision(&w, self.b, k) - problem.label(k) - self.error_cache[k]).abs())
            .fold(0.0, f64::max)
    }

    /// `sum alpha_i y_i`
    pub fn balance(&self, problem: &LabeledProblem) -> f64 {
        self.alphas.iter().zip(&problem.labels).map(|(a, y)| a * y).sum()
    }

    /// With every multiplier at a bound nothing pins `b`, and the pairwise
    /// updates can leave it where some bound point violates KKT. Moves `b`
    /// to the middle of the interval on which every point satisfies KKT,
    /// shifting the error cache with it. Returns whether `b` moved.
    pub fn refit_threshold(&mut self, problem: &LabeledProblem) -> bool {
        let c = problem.c;
        if (0..problem.len()).any(|i| self.is_non_bound(i, c)) {
            return false;
        }
        // y (f + d) - 1 = r + y d
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for k in 0..problem.len() {
            let y = problem.label(k);
            let r = y * self.error_cache[k];
            if (self.alphas[k] == 0.0) == (y > 0.0) {
                lo = lo.max(-y * r);
            } else {
                hi = hi.min(-y * r);
            }
        }
        if lo > hi {
            return false;
        }
        let d = if lo.is_finite() && hi.is_finite() {
            0.5 * (lo + hi)
        } else {
            0.0_f64.clamp(lo, hi)
        };
        if d == 0.0 {
            return false;
        }
        self.b += d;
        for e in &mut self.error_cache {
            *e += d;
        }
        true
    }

    fn is_non_bound(&self, i: usize, c: f64) -> bool {
        self.alphas[i] > 0.0 && self.alphas[i] < c
    }
}

/// `w = sum alpha_i y_i x_i`
pub fn weight_vector(problem: &LabeledProblem, alphas: &[f64]) -> Vec<f64> {
    let mut w = vec![0.0; problem.points.dim()];
    for (k, &a) in alphas.iter().enumerate() {
        if a != 0.0 {
            let c = a * problem.label(k);
            for (wi, xi) in w.iter_mut().zip(problem.points.point(k)) {
                *wi += c * xi;
            }
        }
    }
    w
}

#[derive(Debug, Clone)]
pub struct SvmSolution {
    pub w: Vec<f64>,
    /// Two-sided threshold `-(max_{y=-1} w.x + min_{y=+1} w.x) / 2`.
    pub b: f64,
    /// The solver's own threshold, consistent with its error cache.
    pub threshold: f64,
    pub alphas: Vec<f64>,
    pub report: SolveReport,
    pub stats: SmoStats,
}

/// Feasible interval `[L, H]` for `alpha_j` when `(alpha_i, alpha_j)` move
/// along the equality constraint.
pub fn compute_bounds(alpha_i: f64, alpha_j: f64, y_i: f64, y_j: f64, c: f64) -> (f64, f64) {
    if y_i != y_j {
        (
            (alpha_j - alpha_i).max(0.0),
            if c.is_infinite() {
                f64::INFINITY
            } else {
                c.min(c + alpha_j - alpha_i)
            },
        )
    } else {
        let l = if c.is_infinite() {
            0.0
        } else {
            (alpha_i + alpha_j - c).max(0.0)
        };
        (l, c.min(alpha_i + alpha_j))
    }
}

/// `W(alpha)` by the double sum over nonzero multipliers.
pub fn dual_objective(state: &DualState, problem: &LabeledProblem) -> f64 {
    let support: Vec<usize> = (0..problem.len()).filter(|&i| state.alphas[i] != 0.0).collect();
    let mut quad = 0.0;
    for &i in &support {
        let xi = problem.points.point(i);
        let ci = state.alphas[i] * problem.label(i);
        for &j in &support {
            quad += ci * state.alphas[j] * problem.label(j) * dot(xi, problem.points.point(j));
        }
    }
    support.iter().map(|&i| state.alphas[i]).sum::<f64>() - 0.5 * quad
}

/// Indices violating the optimality conditions by more than `tol`:
/// `alpha = 0 => y f >= 1`, `0 < alpha < C => y f = 1`, `alpha = C => y f <= 1`.
pub fn kkt_violations(state: &DualState, problem: &LabeledProblem, tol: f64) -> Vec<usize> {
    let c = problem.c;
    (0..problem.len())
        .filter(|&k| {
            // y f - 1 = y E
            let r = problem.label(k) * state.error_cache[k];
            let a = state.alphas[k];
            (r < -tol && a < c) || (r > tol && a > 0.0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_d() -> LabeledProblem {
        let pts = PointSet::new(vec![vec![0.0], vec![2.0]]).unwrap();
        LabeledProblem::new(pts, vec![-1, 1], f64::INFINITY).unwrap()
    }

    #[test]
    fn bounds_examples() {
        let (l, h) = compute_bounds(0.2, 0.5, 1.0, -1.0, 1.0);
        assert!((l - 0.3).abs() < 1e-15 && h == 1.0);
        let (l, h) = compute_bounds(0.2, 0.5, 1.0, 1.0, 1.0);
        assert!(l == 0.0 && (h - 0.7).abs() < 1e-15);
        assert_eq!(
            compute_bounds(0.0, 0.0, 1.0, -1.0, f64::INFINITY),
            (0.0, f64::INFINITY)
        );
        assert_eq!(compute_bounds(0.25, 0.5, 1.0, 1.0, f64::INFINITY), (0.0, 0.75));
    }

    #[test]
    fn objective_examples() {
        let p = one_d();
        let s = DualState::new(&p);
        assert_eq!(dual_objective(&s, &p), 0.0);
        let s = DualState::from_alphas(&p, vec![0.5, 0.5], -1.0).unwrap();
        assert_eq!(dual_objective(&s, &p), 0.5);
        assert_eq!(s.objective, 0.5);
    }

    #[test]
    fn kkt_examples() {
        let p = one_d();
        let opt = DualState::from_alphas(&p, vec![0.5, 0.5], -1.0).unwrap();
        assert!(kkt_violations(&opt, &p, 1e-9).is_empty());
        let zero = DualState::new(&p);
        assert_eq!(kkt_violations(&zero, &p, 1e-3), vec![0, 1]);
        assert!(kkt_violations(&zero, &p, f64::INFINITY).is_empty());
    }

    #[test]
    fn problem_validation() {
        let pts = PointSet::new(vec![vec![0.0], vec![2.0]]).unwrap();
        assert!(matches!(
            LabeledProblem::new(pts.clone(), vec![1, 1], 1.0),
            Err(HullError::SingleClass)
        ));
        assert!(LabeledProblem::new(pts.clone(), vec![1, 0], 1.0).is_err());
        assert!(LabeledProblem::new(pts.clone(), vec![1], 1.0).is_err());
        assert!(LabeledProblem::new(pts, vec![1, -1], 0.0).is_err());
    }
}
