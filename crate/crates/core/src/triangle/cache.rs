//! Incrementally maintained inner products between the two iterates and
//! every input vertex.
//!
//! When an iterate moves as `x <- (1 - alpha) x + alpha t`, each cached
//! product `x . u` becomes `(1 - alpha) (x . u) + alpha (t . u)`. With the
//! Gram row of `t` at hand that is `O(n + n')` per step instead of a fresh
//! `O((n + n') m)` scan. Gram rows are computed lazily and kept in a small
//! least-recently-used store.

use std::rc::Rc;

use super::pivot::Side;
use crate::error::{HullError, Result};
use crate::geometry::dot;
use crate::hull::PointSet;
use crate::rows::RowCache;

/// A target point given as a convex combination of one side's vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Target {
    pub side: Side,
    pub weights: Vec<(usize, f64)>,
    pub point: Vec<f64>,
    pub sq_norm: f64,
}

impl Target {
    pub fn vertex(set: &PointSet, side: Side, j: usize) -> Self {
        Target {
            side,
            weights: vec![(j, 1.0)],
            point: set.point(j).to_vec(),
            sq_norm: set.sq_norm(j),
        }
    }

    /// `(s + t) / 2`, with weights expanded over the original vertices.
    pub fn midpoint(s: &Target, t: &Target) -> Self {
        assert_eq!(s.side, t.side);
        let mut weights: Vec<(usize, f64)> = Vec::new();
        for &(j, w) in s.weights.iter().chain(&t.weights) {
            match weights.iter_mut().find(|(k, _)| *k == j) {
                Some(e) => e.1 += 0.5 * w,
                None => weights.push((j, 0.5 * w)),
            }
        }
        weights.sort_by_key(|&(j, _)| j);
        let point: Vec<f64> = s.point.iter().zip(&t.point).map(|(x, y)| 0.5 * (x + y)).collect();
        let sq_norm = dot(&point, &point);
        Target {
            side: s.side,
            weights,
            point,
            sq_norm,
        }
    }
}

/// Products of one vertex with every vertex of both sets.
#[derive(Debug)]
struct GramRow {
    with: [Vec<f64>; 2],
}

/// Cached `p . u` and `p' . u` for every vertex `u`, plus `|p|^2`, `|p'|^2`
/// and `p . p'`.
#[derive(Debug)]
pub struct DotCache {
    /// `dots[iterate][set][k]`, iterate 0 = `p`, 1 = `p'`.
    dots: [[Vec<f64>; 2]; 2],
    sq: [f64; 2],
    cross: f64,
    store: RowCache<(Side, usize), GramRow>,
    stale: bool,
    updates: usize,
}

impl DotCache {
    /// Builds the cache from scratch. `row_capacity` bounds the number of
    /// Gram rows kept (0 disables row reuse).
    pub fn new(a: &PointSet, b: &PointSet, p: &[f64], q: &[f64], row_capacity: usize) -> Self {
        let mut cache = DotCache {
            dots: Default::default(),
            sq: [0.0; 2],
            cross: 0.0,
            store: RowCache::new(row_capacity),
            stale: false,
            updates: 0,
        };
        cache.refresh(a, b, p, q);
        cache
    }

    pub fn refresh(&mut self, a: &PointSet, b: &PointSet, p: &[f64], q: &[f64]) {
        self.dots = [[a.dots_with(p), b.dots_with(p)], [a.dots_with(q), b.dots_with(q)]];
        self.sq = [dot(p, p), dot(q, q)];
        self.cross = dot(p, q);
        self.stale = false;
        self.updates = 0;
    }

    /// Marks the cache unusable until the next `refresh`, e.g. after the
    /// iterates were modified outside the solver.
    pub fn invalidate(&mut self) {
        self.stale = true;
    }

    pub fn is_stale(&self) -> bool {
        self.stale
    }

    /// Steps applied since the last refresh.
    pub fn updates_since_refresh(&self) -> usize {
        self.updates
    }

    pub fn row_misses(&self) -> usize {
        self.store.misses()
    }

    /// `x . u_k` where `x` is the iterate of `mover` and `u_k` is vertex `k`
    /// of `set`.
    #[inline]
    pub fn dot(&self, mover: Side, set: Side, k: usize) -> f64 {
        self.dots[mover.index()][set.index()][k]
    }

    pub fn dots(&self, mover: Side, set: Side) -> &[f64] {
        &self.dots[mover.index()][set.index()]
    }

    pub fn sq_norm(&self, mover: Side) -> f64 {
        self.sq[mover.index()]
    }

    pub fn cross(&self) -> f64 {
        self.cross
    }

    /// Applies `x <- (1 - alpha) x + alpha t` for the iterate on
    /// `target.side`.
    pub fn update(&mut self, a: &PointSet, b: &PointSet, target: &Target, alpha: f64) -> Result<()> {
        if self.stale {
            return Err(HullError::StaleCache);
        }
        if alpha == 0.0 {
            return Ok(());
        }
        let mover = target.side.index();
        let other = 1 - mover;
        let keep = 1.0 - alpha;

        let x_dot_t: f64 = target
            .weights
            .iter()
            .map(|&(j, w)| w * self.dots[mover][mover][j])
            .sum();
        let y_dot_t: f64 = target
            .weights
            .iter()
            .map(|&(j, w)| w * self.dots[other][mover][j])
            .sum();

        let rows: Vec<(Rc<GramRow>, f64)> = target
            .weights
            .iter()
            .map(|&(j, w)| {
                let v = [a, b][target.side.index()].point(j);
                let row = self.store.get((target.side, j), || GramRow {
                    with: [a.dots_with(v), b.dots_with(v)],
                });
                (row, w)
            })
            .collect();
        for set in 0..2 {
            let dots = &mut self.dots[mover][set];
            for d in dots.iter_mut() {
                *d *= keep;
            }
            for (row, w) in &rows {
                let coef = alpha * w;
                for (d, g) in dots.iter_mut().zip(&row.with[set]) {
                    *d += coef * g;
                }
            }
        }
        self.sq[mover] =
            keep * keep * self.sq[mover] + 2.0 * alpha * keep * x_dot_t + alpha * alpha * target.sq_norm;
        self.cross = keep * self.cross + alpha * y_dot_t;
        self.updates += 1;
        Ok(())
    }

    /// Largest absolute difference against a from-scratch recomputation.
    pub fn max_deviation(&self, a: &PointSet, b: &PointSet, p: &[f64], q: &[f64]) -> f64 {
        let fresh = DotCache::new(a, b, p, q, 0);
        let mut worst = 0.0f64;
        for i in 0..2 {
            for s in 0..2 {
                for (x, y) in self.dots[i][s].iter().zip(&fresh.dots[i][s]) {
                    worst = worst.max((x - y).abs());
                }
            }
            worst = worst.max((self.sq[i] - fresh.sq[i]).abs());
        }
        worst.max((self.cross - fresh.cross).abs())
    }
}
