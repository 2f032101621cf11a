//! Zig-zag detection.
//!
//! An iterate that alternates between two pivots makes little progress per
//! step. When the gap shrinks by less than `epsilon * gap` over a window of
//! steps, the guard proposes the midpoint of the two pivots used most often
//! in that window as an extra candidate vertex.

use std::collections::VecDeque;

use super::pivot::Side;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZigzagConfig {
    pub window: usize,
    pub epsilon: f64,
    pub max_synthetic: usize,
}

impl Default for ZigzagConfig {
    fn default() -> Self {
        ZigzagConfig {
            window: 8,
            epsilon: 1e-3,
            max_synthetic: 64,
        }
    }
}

/// Identifies a pivot: an input vertex or a previously added midpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PivotTag {
    Vertex(Side, usize),
    Synthetic(Side, usize),
}

impl PivotTag {
    pub fn side(&self) -> Side {
        match *self {
            PivotTag::Vertex(s, _) | PivotTag::Synthetic(s, _) => s,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ZigzagGuard {
    config: ZigzagConfig,
    gaps: VecDeque<f64>,
    pivots: VecDeque<PivotTag>,
    emitted: Vec<(PivotTag, PivotTag)>,
}

impl ZigzagGuard {
    pub fn new(config: ZigzagConfig) -> Self {
        ZigzagGuard {
            config,
            gaps: VecDeque::new(),
            pivots: VecDeque::new(),
            emitted: Vec::new(),
        }
    }

    pub fn config(&self) -> &ZigzagConfig {
        &self.config
    }

    pub fn emitted(&self) -> usize {
        self.emitted.len()
    }

    /// Seeds the window with the gap before the first step.
    pub fn start(&mut self, gap: f64) {
        self.gaps.clear();
        self.pivots.clear();
        self.gaps.push_back(gap);
    }

    /// Records one step (the pivot used and the gap after it). Returns the
    /// pair whose midpoint should be added, if the window shows stalling.
    pub fn observe(&mut self, pivot: PivotTag, gap_after: f64) -> Option<(PivotTag, PivotTag)> {
        if self.gaps.is_empty() {
            self.gaps.push_back(gap_after);
            return None;
        }
        self.gaps.push_back(gap_after);
        self.pivots.push_back(pivot);
        while self.pivots.len() > self.config.window {
            self.pivots.pop_front();
            self.gaps.pop_front();
        }
        if self.pivots.len() < self.config.window || self.emitted.len() >= self.config.max_synthetic {
            return None;
        }
        let first = *self.gaps.front().unwrap();
        let reduction = first - gap_after;
        if reduction >= self.config.epsilon * gap_after {
            return None;
        }
        let pair = self.most_frequent_pair()?;
        if self
            .emitted
            .iter()
            .any(|&(x, y)| (x, y) == pair || (y, x) == pair)
        {
            return None;
        }
        self.emitted.push(pair);
        self.gaps.clear();
        self.pivots.clear();
        self.gaps.push_back(gap_after);
        Some(pair)
    }

    /// Two distinct pivots on one side, each used at least twice in the
    /// window, by descending count (ties by first appearance).
    fn most_frequent_pair(&self) -> Option<(PivotTag, PivotTag)> {
        let mut counts: Vec<(PivotTag, usize)> = Vec::new();
        for &p in &self.pivots {
            match counts.iter_mut().find(|(t, _)| *t == p) {
                Some(e) => e.1 += 1,
                None => counts.push((p, 1)),
            }
        }
        // stable sort keeps first-appearance order among equal counts
        counts.sort_by(|x, y| y.1.cmp(&x.1));
        let (top, n_top) = *counts.first()?;
        if n_top < 2 {
            return None;
        }
        counts
            .iter()
            .skip(1)
            .find(|(t, n)| t.side() == top.side() && *n >= 2)
            .map(|&(t, _)| (top, t))
    }
}
