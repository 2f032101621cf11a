//! Reference computations for tests: hull distance by independent methods
//! and certificate checks.
//!
//! Every result carries a certified error bound: the gap between the
//! returned distance and the plane lower bound along `p' - p`.

mod linalg;
mod wolfe;

use crate::error::{HullError, Result};
use crate::geometry::{dist, dot, norm_sq, sub, Hyperplane};
use crate::hull::{ConvexIterate, PointSet};
use wolfe::min_norm_point;

/// Largest number of candidate evaluations the enumerating methods accept.
pub const ENUM_LIMIT: u64 = 50_000_000;

/// Default grid subdivisions per coefficient simplex edge.
pub const DEFAULT_RESOLUTION: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    /// Joint grid over both coefficient simplices.
    GridEnum { resolution: usize },
    /// Exact: every simplex of the difference set `V' - V` with at most
    /// `m + 1` vertices, affine minimum-norm point per simplex.
    FaceEnum,
    /// Alternate exact projections onto each hull until the distance stalls.
    AlternatingProjection,
    /// Active-set minimum-norm point of the difference set.
    MinNormPoint,
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub delta_star: f64,
    pub p: ConvexIterate,
    pub q: ConvexIterate,
    pub method: OracleMethod,
    /// `delta_star` minus a certified lower bound on the hull distance.
    pub error_bound: f64,
}

impl OracleResult {
    /// Lower end of the certified interval.
    pub fn lower_bound(&self) -> f64 {
        (self.delta_star - self.error_bound).max(0.0)
    }

    /// Verdict with an absolute tolerance `tol * scale`, where `scale` is the
    /// largest vertex norm (at least 1).
    pub fn intersects(&self, a: &PointSet, b: &PointSet, tol: f64) -> bool {
        self.delta_star <= tol * a.max_norm().max(b.max_norm()).max(1.0)
    }
}

pub fn brute_force_distance(a: &PointSet, b: &PointSet, method: OracleMethod) -> Result<OracleResult> {
    a.check_same_dim(b)?;
    let (p, q) = match method {
        OracleMethod::GridEnum { resolution } => grid_enum(a, b, resolution)?,
        OracleMethod::FaceEnum => face_enum(a, b)?,
        OracleMethod::AlternatingProjection => alternating(a, b),
        OracleMethod::MinNormPoint => min_norm_pair(a, b),
    };
    let p = ConvexIterate::from_coefficients(a, p)?;
    let q = ConvexIterate::from_coefficients(b, q)?;
    let delta_star = dist(p.point(), q.point());
    let lower = plane_bound(&sub(q.point(), p.point()), a, b)
        .unwrap_or(0.0)
        .max(0.0);
    Ok(OracleResult {
        delta_star,
        error_bound: (delta_star - lower).max(0.0),
        p,
        q,
        method,
    })
}

/// `(min w.v' - max w.v) / |w|`.
fn plane_bound(w: &[f64], a: &PointSet, b: &PointSet) -> Option<f64> {
    let wn = norm_sq(w).sqrt();
    if wn == 0.0 {
        return None;
    }
    let hi = a.iter().map(|v| dot(w, v)).fold(f64::NEG_INFINITY, f64::max);
    let lo = b.iter().map(|v| dot(w, v)).fold(f64::INFINITY, f64::min);
    Some((lo - hi) / wn)
}

/// The reported distance `d = (min{w.v' + b} - max{w.v + b}) / |w|` of a
/// separating direction; negative when `w` does not separate.
pub fn reported_distance(w: &[f64], _b: f64, a: &PointSet, b: &PointSet) -> Result<f64> {
    plane_bound(w, a, b).ok_or(HullError::ZeroNormal)
}

/// True iff `V` lies strictly on one side of `h` and `V'` strictly on the
/// other, up to `tol * |normal| * max vertex norm`.
pub fn check_separation(h: &Hyperplane, a: &PointSet, b: &PointSet, tol: f64) -> bool {
    let scale = h.normal_norm() * a.max_norm().max(b.max_norm()).max(f64::MIN_POSITIVE);
    let slack = tol * scale;
    let range = |s: &PointSet| {
        s.iter()
            .map(|v| h.eval(v))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| {
                (lo.min(e), hi.max(e))
            })
    };
    let (alo, ahi) = range(a);
    let (blo, bhi) = range(b);
    (alo > -slack && bhi < slack) || (ahi < slack && blo > -slack)
}

fn binom(n: u64, k: u64) -> u64 {
    let k = k.min(n.saturating_sub(k));
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// All coefficient vectors of length `n` with entries in `{0, 1/r, .., 1}`.
fn simplex_grid(n: usize, r: usize) -> Vec<Vec<f64>> {
    fn rec(left: usize, slot: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slot + 1 == cur.len() {
            cur[slot] = left;
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[slot] = k;
            rec(left - k, slot + 1, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(r, 0, &mut vec![0; n], &mut out);
    out.into_iter()
        .map(|c| c.into_iter().map(|k| k as f64 / r as f64).collect())
        .collect()
}

fn synth(set: &PointSet, c: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; set.dim()];
    for (v, &w) in set.iter().zip(c) {
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi += w * vi;
        }
    }
    x
}

fn grid_enum(a: &PointSet, b: &PointSet, r: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if r == 0 {
        return Err(HullError::InvalidParameter("resolution must be positive".into()));
    }
    let ca = binom((r + a.len() - 1) as u64, (a.len() - 1) as u64);
    let cb = binom((r + b.len() - 1) as u64, (b.len() - 1) as u64);
    if ca.saturating_mul(cb) > ENUM_LIMIT {
        return Err(HullError::SizeLimit(format!(
            "grid of {ca} x {cb} coefficient vectors at resolution {r}"
        )));
    }
    let ga = simplex_grid(a.len(), r);
    let gb = simplex_grid(b.len(), r);
    let pa: Vec<Vec<f64>> = ga.iter().map(|c| synth(a, c)).collect();
    let pb: Vec<Vec<f64>> = gb.iter().map(|c| synth(b, c)).collect();
    let mut best = (f64::INFINITY, 0, 0);
    for (i, x) in pa.iter().enumerate() {
        for (j, y) in pb.iter().enumerate() {
            let d = x.iter().zip(y).map(|(u, v)| (u - v) * (u - v)).sum::<f64>();
            if d < best.0 {
                best = (d, i, j);
            }
        }
    }
    Ok((ga[best.1].clone(), gb[best.2].clone()))
}

fn face_enum(a: &PointSet, b: &PointSet) -> Result<(Vec<f64>, Vec<f64>)> {
    let pairs: Vec<(usize, usize)> = (0..a.len())
        .flat_map(|i| (0..b.len()).map(move |j| (i, j)))
        .collect();
    let diffs: Vec<Vec<f64>> = pairs.iter().map(|&(i, j)| sub(b.point(j), a.point(i))).collect();
    let kmax = (a.dim() + 1).min(diffs.len());
    let total: u64 = (1..=kmax as u64).map(|k| binom(diffs.len() as u64, k)).sum();
    if total > ENUM_LIMIT / 4 {
        return Err(HullError::SizeLimit(format!("{total} candidate simplices")));
    }
    let mut best = (f64::INFINITY, Vec::<usize>::new(), Vec::<f64>::new());
    let mut idx: Vec<usize> = Vec::with_capacity(kmax);
    fn visit(
        start: usize,
        kmax: usize,
        diffs: &[Vec<f64>],
        idx: &mut Vec<usize>,
        best: &mut (f64, Vec<usize>, Vec<f64>),
    ) {
        for s in start..diffs.len() {
            idx.push(s);
            let refs: Vec<&[f64]> = idx.iter().map(|&k| diffs[k].as_slice()).collect();
            if let Some(mu) = linalg::affine_min_norm(&refs) {
                if mu.iter().all(|&m| m >= -1e-12) {
                    let mut x = vec![0.0; diffs[0].len()];
                    for (&k, &m) in idx.iter().zip(&mu) {
                        for (xi, di) in x.iter_mut().zip(&diffs[k]) {
                            *xi += m * di;
                        }
                    }
                    let n = norm_sq(&x);
                    if n < best.0 {
                        *best = (n, idx.clone(), mu);
                    }
                }
                if idx.len() < kmax {
                    visit(s + 1, kmax, diffs, idx, best);
                }
            }
            idx.pop();
        }
    }
    visit(0, kmax, &diffs, &mut idx, &mut best);
    let mut ca = vec![0.0; a.len()];
    let mut cb = vec![0.0; b.len()];
    for (&k, &m) in best.1.iter().zip(&best.2) {
        let (i, j) = pairs[k];
        ca[i] += m.max(0.0);
        cb[j] += m.max(0.0);
    }
    Ok((ca, cb))
}

fn argext(set: &PointSet, dir: &[f64], largest: bool) -> usize {
    let mut best = (0, f64::NAN);
    for (k, v) in set.iter().enumerate() {
        let d = dot(dir, v);
        let better = if largest { d > best.1 } else { d < best.1 };
        if best.1.is_nan() || better {
            best = (k, d);
        }
    }
    best.0
}

fn min_norm_pair(a: &PointSet, b: &PointSet) -> (Vec<f64>, Vec<f64>) {
    let scale = 2.0 * a.max_norm().max(b.max_norm());
    let atom = |i: usize, j: usize| sub(b.point(j), a.point(i));
    let res = min_norm_point(
        |x| {
            let i = argext(a, x, true);
            let j = argext(b, x, false);
            ((i, j), atom(i, j))
        },
        ((0, 0), atom(0, 0)),
        scale,
        100_000,
    );
    let mut ca = vec![0.0; a.len()];
    let mut cb = vec![0.0; b.len()];
    for (((i, j), _), w) in res.atoms.iter().zip(&res.weights) {
        ca[*i] += w;
        cb[*j] += w;
    }
    (ca, cb)
}

/// Exact nearest point of `conv(set)` to `y`, as coefficients over `set`.
pub fn nearest_point_in_hull(y: &[f64], set: &PointSet) -> Vec<f64> {
    let scale = set.max_norm() + norm_sq(y).sqrt();
    let res = min_norm_point(
        |x| {
            let i = argext(set, x, false);
            (i, sub(set.point(i), y))
        },
        (0, sub(set.point(0), y)),
        scale,
        100_000,
    );
    let mut c = vec![0.0; set.len()];
    for ((i, _), w) in res.atoms.iter().zip(&res.weights) {
        c[*i] += w;
    }
    c
}

fn alternating(a: &PointSet, b: &PointSet) -> (Vec<f64>, Vec<f64>) {
    let mut ca = vec![1.0 / a.len() as f64; a.len()];
    let mut p = synth(a, &ca);
    let mut cb = nearest_point_in_hull(&p, b);
    let mut q = synth(b, &cb);
    let mut d = dist(&p, &q);
    let scale = a.max_norm().max(b.max_norm()).max(1.0);
    for _ in 0..10_000 {
        ca = nearest_point_in_hull(&q, a);
        p = synth(a, &ca);
        cb = nearest_point_in_hull(&p, b);
        q = synth(b, &cb);
        let next = dist(&p, &q);
        let stalled = d - next <= 1e-10 * scale;
        d = next;
        if stalled {
            break;
        }
    }
    (ca, cb)
}
