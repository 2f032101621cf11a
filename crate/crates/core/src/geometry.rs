//! Dimension-generic vector arithmetic and the nearest-point primitives the
//! solvers are built on: point-to-segment, segment-to-segment and the
//! orthogonal bisector of two points.

use std::ops::Deref;

use crate::error::{HullError, Result};

/// Relative threshold under which two segment directions count as parallel.
pub const PARALLEL_TOL: f64 = 1e-12;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    // four independent partial sums let the compiler vectorize
    let (ca, cb) = (a.chunks_exact(4), b.chunks_exact(4));
    let tail: f64 = ca
        .remainder()
        .iter()
        .zip(cb.remainder())
        .map(|(x, y)| x * y)
        .sum();
    let mut acc = [0.0; 4];
    for (x, y) in ca.zip(cb) {
        for k in 0..4 {
            acc[k] += x[k] * y[k];
        }
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

#[inline]
pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

#[inline]
pub fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let (ca, cb) = (a.chunks_exact(4), b.chunks_exact(4));
    let tail: f64 = ca
        .remainder()
        .iter()
        .zip(cb.remainder())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    let mut acc = [0.0; 4];
    for (x, y) in ca.zip(cb) {
        for k in 0..4 {
            let d = x[k] - y[k];
            acc[k] += d * d;
        }
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

#[inline]
pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist_sq(a, b).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `(1 - t) * a + t * b`
pub fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| (1.0 - t) * x + t * y).collect()
}

/// In-place `a <- (1 - t) * a + t * b`.
pub fn lerp_in_place(a: &mut [f64], b: &[f64], t: f64) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = (1.0 - t) * *x + t * y;
    }
}

/// A point in R^m with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(HullError::ZeroDimension);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(HullError::NonFinite { index: 0 });
        }
        Ok(Point(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Vec<f64> {
        p.0
    }
}

/// The hyperplane `{x : normal . x = offset}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Hyperplane {
    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self> {
        if normal.iter().all(|&c| c == 0.0) {
            return Err(HullError::ZeroNormal);
        }
        Ok(Hyperplane { normal, offset })
    }

    /// Builds the plane `w . x + b = 0` used by the SVM formulation.
    pub fn from_svm(w: Vec<f64>, b: f64) -> Result<Self> {
        Hyperplane::new(w, -b)
    }

    /// `normal . x - offset`; positive on the side the normal points to.
    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x) - self.offset
    }

    pub fn side(&self, x: &[f64]) -> f64 {
        let v = self.eval(x);
        if v > 0.0 {
            1.0
        } else if v < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    pub fn normal_norm(&self) -> f64 {
        norm_sq(&self.normal).sqrt()
    }

    /// Signed Euclidean distance from `x` to the plane.
    pub fn signed_distance(&self, x: &[f64]) -> f64 {
        self.eval(x) / self.normal_norm()
    }
}

/// Result of projecting a point onto a segment `[y, z]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentProjection {
    pub point: Vec<f64>,
    pub alpha: f64,
    /// Set when `y == z`; the point is then `y` and no movement is possible.
    pub degenerate: bool,
}

/// Step size of the projection of `x` onto the segment `[y, z]`, clamped to
/// `[0, 1]`. `None` for a degenerate segment.
pub fn segment_step(x: &[f64], y: &[f64], z: &[f64]) -> Option<f64> {
    let len_sq = dist_sq(y, z);
    if len_sq == 0.0 {
        return None;
    }
    let num: f64 = x
        .iter()
        .zip(y)
        .zip(z)
        .map(|((xi, yi), zi)| (xi - yi) * (zi - yi))
        .sum();
    Some((num / len_sq).clamp(0.0, 1.0))
}

/// Nearest point to `x` on the segment `[y, z]`.
pub fn nearest_on_segment(x: &[f64], y: &[f64], z: &[f64]) -> SegmentProjection {
    match segment_step(x, y, z) {
        Some(alpha) => SegmentProjection {
            point: lerp(y, z, alpha),
            alpha,
            degenerate: false,
        },
        None => SegmentProjection {
            point: y.to_vec(),
            alpha: 0.0,
            degenerate: true,
        },
    }
}

/// Two segments `[p, v]` and `[p', v']` in a common space.
#[derive(Debug, Clone, Copy)]
pub struct SegmentPair<'a> {
    pub p: &'a [f64],
    pub v: &'a [f64],
    pub p2: &'a [f64],
    pub v2: &'a [f64],
}

/// Inner products that fully determine the segment-segment problem:
/// `a = v - p`, `b = v' - p'`, `r = p - p'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentGram {
    pub aa: f64,
    pub bb: f64,
    pub ab: f64,
    pub ar: f64,
    pub br: f64,
    pub rr: f64,
}

impl SegmentGram {
    pub fn from_pair(pair: &SegmentPair<'_>) -> Self {
        let a = sub(pair.v, pair.p);
        let b = sub(pair.v2, pair.p2);
        let r = sub(pair.p, pair.p2);
        SegmentGram {
            aa: dot(&a, &a),
            bb: dot(&b, &b),
            ab: dot(&a, &b),
            ar: dot(&a, &r),
            br: dot(&b, &r),
            rr: dot(&r, &r),
        }
    }

    /// `|| (p + s a) - (p' + t b) ||^2`
    pub fn gap_sq(&self, s: f64, t: f64) -> f64 {
        let v = self.rr + s * s * self.aa + t * t * self.bb + 2.0 * s * self.ar
            - 2.0 * t * self.br
            - 2.0 * s * t * self.ab;
        v.max(0.0)
    }

    /// Minimizing `t` for fixed `s`, clamped.
    fn best_t(&self, s: f64) -> f64 {
        if self.bb == 0.0 {
            0.0
        } else {
            ((self.br + s * self.ab) / self.bb).clamp(0.0, 1.0)
        }
    }

    /// Minimizing `s` for fixed `t`, clamped.
    fn best_s(&self, t: f64) -> f64 {
        if self.aa == 0.0 {
            0.0
        } else {
            ((t * self.ab - self.ar) / self.aa).clamp(0.0, 1.0)
        }
    }

    pub fn is_parallel(&self) -> bool {
        let denom = self.aa * self.bb - self.ab * self.ab;
        denom <= PARALLEL_TOL * self.aa * self.bb
    }

    /// Optimal `(s, t)` in `[0, 1]^2`.
    ///
    /// The interior stationary point is taken when it lies in the box.
    /// Otherwise the minimum sits on a box edge; each of the four edges is
    /// solved exactly by one projection and the best is kept, ties going to
    /// the candidate found first (`s = 0`, `t = 0`, `s = 1`, `t = 1`).
    pub fn solve(&self) -> (f64, f64) {
        if self.aa == 0.0 && self.bb == 0.0 {
            return (0.0, 0.0);
        }
        if self.aa == 0.0 {
            return (0.0, self.best_t(0.0));
        }
        if self.bb == 0.0 {
            return (self.best_s(0.0), 0.0);
        }
        if !self.is_parallel() {
            let denom = self.aa * self.bb - self.ab * self.ab;
            let s = (self.ab * self.br - self.bb * self.ar) / denom;
            let t = (self.aa * self.br - self.ab * self.ar) / denom;
            if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&t) {
                return (s, t);
            }
        }
        let candidates = [
            (0.0, self.best_t(0.0)),
            (self.best_s(0.0), 0.0),
            (1.0, self.best_t(1.0)),
            (self.best_s(1.0), 1.0),
        ];
        let mut best = candidates[0];
        let mut best_gap = self.gap_sq(best.0, best.1);
        for &(s, t) in &candidates[1..] {
            let g = self.gap_sq(s, t);
            if g < best_gap {
                best = (s, t);
                best_gap = g;
            }
        }
        best
    }
}

/// Closest pair between two segments.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentClosest {
    pub q: Vec<f64>,
    pub q2: Vec<f64>,
    pub s: f64,
    pub t: f64,
}

impl SegmentClosest {
    pub fn distance(&self) -> f64 {
        dist(&self.q, &self.q2)
    }
}

/// Closest points `q = p + s (v - p)` and `q' = p' + t (v' - p')`.
pub fn closest_segment_points(pair: &SegmentPair<'_>) -> SegmentClosest {
    let (s, t) = SegmentGram::from_pair(pair).solve();
    SegmentClosest {
        q: lerp(pair.p, pair.v, s),
        q2: lerp(pair.p2, pair.v2, t),
        s,
        t,
    }
}

/// Orthogonal bisector of `p p'`: normal `p - p'`, offset `(|p|^2 - |p'|^2) / 2`.
/// `p` lies on the positive side.
pub fn bisector(p: &[f64], p2: &[f64]) -> Result<Hyperplane> {
    if p.len() != p2.len() {
        return Err(HullError::DimensionMismatch {
            expected: p.len(),
            found: p2.len(),
        });
    }
    if p == p2 {
        return Err(HullError::CoincidentPoints);
    }
    let normal = sub(p, p2);
    let offset = 0.5 * (norm_sq(p) - norm_sq(p2));
    Hyperplane::new(normal, offset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn nearest_on_segment_examples() {
        let r = nearest_on_segment(&[0.0, 1.0], &[0.0, 0.0], &[2.0, 0.0]);
        assert_eq!(r.point, vec![0.0, 0.0]);
        assert_eq!(r.alpha, 0.0);

        let r = nearest_on_segment(&[1.0, 1.0], &[0.0, 0.0], &[2.0, 0.0]);
        assert_eq!(r.point, vec![1.0, 0.0]);
        assert_eq!(r.alpha, 0.5);

        let r = nearest_on_segment(&[3.0, 1.0], &[0.0, 0.0], &[1.0, 0.0]);
        assert_eq!(r.point, vec![1.0, 0.0]);
        assert_eq!(r.alpha, 1.0);
        assert!(!r.degenerate);
    }

    #[test]
    fn nearest_on_degenerate_segment() {
        let r = nearest_on_segment(&[3.0, 1.0], &[1.0, 1.0], &[1.0, 1.0]);
        assert!(r.degenerate);
        assert_eq!(r.alpha, 0.0);
        assert_eq!(r.point, vec![1.0, 1.0]);
    }

    #[test]
    fn closest_segments_clamped() {
        let pair = SegmentPair {
            p: &[0.0, 0.0],
            v: &[2.0, 0.0],
            p2: &[1.0, 1.0],
            v2: &[1.0, 3.0],
        };
        let c = closest_segment_points(&pair);
        assert!(close(&c.q, &[1.0, 0.0], 1e-15));
        assert!(close(&c.q2, &[1.0, 1.0], 1e-15));
        assert_eq!((c.s, c.t), (0.5, 0.0));
        assert!((c.distance() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn closest_segments_parallel() {
        let pair = SegmentPair {
            p: &[0.0, 0.0],
            v: &[0.0, 2.0],
            p2: &[2.0, 1.0],
            v2: &[2.0, -1.0],
        };
        assert!(SegmentGram::from_pair(&pair).is_parallel());
        let c = closest_segment_points(&pair);
        assert_eq!((c.s, c.t), (0.0, 0.5));
        assert!(close(&c.q, &[0.0, 0.0], 1e-15));
        assert!(close(&c.q2, &[2.0, 0.0], 1e-15));
        assert!((c.distance() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn closest_segments_identical() {
        let a = [0.5, -1.0, 2.0];
        let b = [1.5, 3.0, 0.0];
        let c = closest_segment_points(&SegmentPair {
            p: &a,
            v: &b,
            p2: &a,
            v2: &b,
        });
        assert!(c.distance() < 1e-12);
    }

    #[test]
    fn closest_segments_crossing_1d() {
        let c = closest_segment_points(&SegmentPair {
            p: &[-1.0],
            v: &[1.0],
            p2: &[2.0],
            v2: &[0.0],
        });
        assert!(c.distance() < 1e-15);
    }

    #[test]
    fn closest_segments_point_segment_fallback() {
        let c = closest_segment_points(&SegmentPair {
            p: &[1.0, 1.0],
            v: &[1.0, 1.0],
            p2: &[0.0, 0.0],
            v2: &[2.0, 0.0],
        });
        assert_eq!(c.s, 0.0);
        assert_eq!(c.t, 0.5);
    }

    #[test]
    fn bisector_examples() {
        let h = bisector(&[0.0, 0.0], &[2.0, 0.0]).unwrap();
        assert_eq!(h.normal, vec![-2.0, 0.0]);
        assert_eq!(h.offset, -2.0);
        assert_eq!(h.eval(&[1.0, 0.0]), 0.0);

        let h = bisector(&[1.0, 1.0], &[3.0, 3.0]).unwrap();
        assert_eq!(h.normal, vec![-2.0, -2.0]);
        assert_eq!(h.offset, -8.0);

        assert!(matches!(
            bisector(&[1.0, 2.0], &[1.0, 2.0]),
            Err(HullError::CoincidentPoints)
        ));
    }

    #[test]
    fn hyperplane_rejects_zero_normal() {
        assert!(matches!(
            Hyperplane::new(vec![0.0, 0.0], 1.0),
            Err(HullError::ZeroNormal)
        ));
    }

    fn coords(m: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-10.0..10.0f64, m)
    }

    proptest! {
        #[test]
        fn nearest_no_worse_than_endpoints(x in coords(3), y in coords(3), z in coords(3)) {
            let r = nearest_on_segment(&x, &y, &z);
            let d = dist(&x, &r.point);
            prop_assert!(d <= dist(&x, &y).min(dist(&x, &z)) + 1e-12);
        }

        #[test]
        fn segment_pair_beats_sampled_pairs(
            p in coords(4), v in coords(4), p2 in coords(4), v2 in coords(4), seed in any::<u64>()
        ) {
            use rand::{Rng, SeedableRng};
            let pair = SegmentPair { p: &p, v: &v, p2: &p2, v2: &v2 };
            let c = closest_segment_points(&pair);
            let best = c.distance();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..1000 {
                let s: f64 = rng.random();
                let t: f64 = rng.random();
                let d = dist(&lerp(&p, &v, s), &lerp(&p2, &v2, t));
                prop_assert!(best <= d + 1e-9);
            }
        }

        #[test]
        fn segment_pair_symmetric(p in coords(3), v in coords(3), p2 in coords(3), v2 in coords(3)) {
            let a = closest_segment_points(&SegmentPair { p: &p, v: &v, p2: &p2, v2: &v2 });
            let b = closest_segment_points(&SegmentPair { p: &p2, v: &v2, p2: &p, v2: &v });
            prop_assert_eq!(a.s, b.t);
            prop_assert_eq!(a.t, b.s);
            prop_assert_eq!(a.q, b.q2);
            prop_assert_eq!(a.q2, b.q);
        }

        #[test]
        fn bisector_equidistant(p in coords(5), p2 in coords(5)) {
            prop_assume!(p != p2);
            let h = bisector(&p, &p2).unwrap();
            let dp = h.signed_distance(&p).abs();
            let dp2 = h.signed_distance(&p2).abs();
            // Rounding in h.x - a scales with |p|^2, not with |p - p'|.
            let gap = dist(&p, &p2);
            let reach = norm_sq(&p).sqrt() + norm_sq(&p2).sqrt();
            prop_assert!((dp - dp2).abs() <= 1e-12 * gap.max(reach * reach / gap));
        }
    }
}
