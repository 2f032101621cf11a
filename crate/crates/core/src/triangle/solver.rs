//! Triangle Algorithm I (intersection or witness pair) and II (approximate
//! distance and supporting hyperplanes).

use crate::Instant;
use std::rc::Rc;

use super::cache::{DotCache, Target};
use super::pivot::Side;
use super::zigzag::{PivotTag, ZigzagConfig, ZigzagGuard};
use crate::error::{HullError, Result};
use crate::geometry::{
    bisector, dist, dot, lerp, norm_sq, segment_step, sub, Hyperplane, SegmentGram, SegmentPair,
};
use crate::hull::{ConvexIterate, PointSet};
use crate::report::{SolveReport, Status};

/// Relative tolerance for the strict halfspace test on witness pairs.
pub const WITNESS_TOL: f64 = 1e-9;

/// Relative window within which extreme vertices count as tied.
const TIE_WINDOW: f64 = 1e-9;
/// Cached products are rebuilt after this many updates to bound drift.
const REFRESH_EVERY: usize = 1024;

#[derive(Debug, Clone)]
pub struct TaOptions {
    pub epsilon: f64,
    pub max_iters: usize,
    /// Move both iterates at once along their pivot segments when both
    /// sides have a pivot.
    pub joint_steps: bool,
    /// Maintain vertex dot products incrementally.
    pub cache: bool,
    /// Scan the previous non-bounding vertices before the full set.
    pub filter: bool,
    pub zigzag: Option<ZigzagConfig>,
    /// Keep `(p, p')` after every step.
    pub record_trace: bool,
    /// Memory budget for cached Gram rows.
    pub row_budget_bytes: usize,
}

impl Default for TaOptions {
    fn default() -> Self {
        TaOptions {
            epsilon: 1e-3,
            max_iters: 10_000,
            joint_steps: true,
            cache: true,
            filter: true,
            zigzag: Some(ZigzagConfig::default()),
            record_trace: false,
            row_budget_bytes: 256 << 20,
        }
    }
}

impl TaOptions {
    pub fn plain() -> Self {
        TaOptions {
            joint_steps: false,
            cache: false,
            filter: false,
            zigzag: None,
            ..TaOptions::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(HullError::InvalidEpsilon(self.epsilon));
        }
        Ok(())
    }
}

/// A pair `(p, p')` whose perpendicular bisector separates the hulls, with
/// `V` on the positive side.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessCertificate {
    pub p: ConvexIterate,
    pub q: ConvexIterate,
    pub bisector: Hyperplane,
}

impl WitnessCertificate {
    pub fn new(p: ConvexIterate, q: ConvexIterate) -> Result<Self> {
        let bisector = bisector(p.point(), q.point())?;
        Ok(WitnessCertificate { p, q, bisector })
    }

    /// Scale for the halfspace tolerance: `|h|` times the largest vertex norm.
    pub fn scale(&self, a: &PointSet, b: &PointSet) -> f64 {
        self.bisector.normal_norm() * a.max_norm().max(b.max_norm()).max(f64::MIN_POSITIVE)
    }

    /// Full scan: every `v` in `V` satisfies `h.v > a - tol` and every `v'`
    /// in `V'` satisfies `h.v' < a + tol`, with `tol = 1e-9 * scale`.
    pub fn is_valid(&self, a: &PointSet, b: &PointSet) -> bool {
        let tol = WITNESS_TOL * self.scale(a, b);
        a.iter().all(|v| self.bisector.eval(v) > -tol) && b.iter().all(|v| self.bisector.eval(v) < tol)
    }
}

/// Bound quantities at one outer step of the distance phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapEstimate {
    /// `d(p, p')`, an upper bound on the hull distance.
    pub delta: f64,
    /// Gap between the supporting planes through `v` and `v'`.
    pub delta_lower: f64,
    pub e: f64,
    pub e_v: f64,
    pub e_v2: f64,
    /// `d(p, v)`
    pub rho: f64,
    /// `d(p', v')`
    pub rho2: f64,
    pub v_index: usize,
    pub v2_index: usize,
}

impl GapEstimate {
    /// Strong approximation test: `E <= eps * rho` or `E <= eps * rho'`.
    pub fn is_strong(&self, epsilon: f64) -> bool {
        self.e <= epsilon * self.rho || self.e <= epsilon * self.rho2
    }
}

#[derive(Debug, Clone, Default)]
pub struct Diagnostics {
    /// `d(p, p')` before the first step and after every step.
    pub gaps: Vec<f64>,
    /// `(delta_lower, delta)` at every outer step of the distance phase.
    pub bounds: Vec<(f64, f64)>,
    pub trace: Vec<(Vec<f64>, Vec<f64>)>,
    pub joint_steps: usize,
    pub weak_steps: usize,
    /// Midpoints added by the zig-zag guard, as weights over the original
    /// vertices of their side.
    pub synthetic: Vec<(Side, Vec<(usize, f64)>)>,
    /// Most recent pivot of each side when the solve ended (the start
    /// points if none was taken).
    pub last_pivots: (Vec<f64>, Vec<f64>),
    pub cache_refreshes: usize,
    /// Gram rows computed by the product cache.
    pub row_misses: usize,
}

#[derive(Debug, Clone)]
pub enum Ta1Result {
    /// `d(p, p') <= eps * d(p, v)` (or the symmetric test) at the returned pair.
    ApproxIntersection,
    Witness(WitnessCertificate),
    MaxIterations,
}

#[derive(Debug, Clone)]
pub struct Ta1Outcome {
    pub report: SolveReport,
    pub result: Ta1Result,
    pub p: ConvexIterate,
    pub q: ConvexIterate,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone)]
pub struct TaOutcome {
    pub report: SolveReport,
    /// Final witness pair, when the hulls were found disjoint.
    pub witness: Option<WitnessCertificate>,
    /// Bounds at exit of the distance phase.
    pub estimate: Option<GapEstimate>,
    pub p: ConvexIterate,
    pub q: ConvexIterate,
    pub diagnostics: Diagnostics,
}

impl TaOutcome {
    /// The plane gap `(min w.v' - max w.v) / |w|` with `w = p' - p`.
    pub fn reported_distance(&self) -> Option<f64> {
        self.estimate.map(|e| e.delta_lower)
    }
}

/// Closest points on `[p, v]` and `[p', v']`, as used by a joint step.
pub fn joint_step(p: &[f64], v: &[f64], p2: &[f64], v2: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let (s, t) = SegmentGram::from_pair(&SegmentPair { p, v, p2, v2 }).solve();
    (lerp(p, v, s), lerp(p2, v2, t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase1 {
    Intersect,
    Witness,
    MaxIter,
}

struct Choice {
    tag: PivotTag,
    target: Target,
}

struct Engine<'a> {
    sets: [&'a PointSet; 2],
    it: [ConvexIterate; 2],
    opts: TaOptions,
    cache: Option<DotCache>,
    synth: [Vec<Target>; 2],
    filter: [Option<Vec<usize>>; 2],
    /// Full scans at the current iterates.
    scans: [Option<Rc<Vec<f64>>>; 2],
    guard: Option<ZigzagGuard>,
    reference: [Vec<f64>; 2],
    iterations: usize,
    diag: Diagnostics,
    /// Rounding level of plane-gap quantities.
    noise: f64,
    scale: f64,
}

impl<'a> Engine<'a> {
    fn new(a: &'a PointSet, b: &'a PointSet, p: ConvexIterate, q: ConvexIterate, opts: &TaOptions) -> Self {
        let cache = opts.cache.then(|| {
            let row_bytes = (a.len() + b.len()).max(1) * std::mem::size_of::<f64>();
            DotCache::new(a, b, p.point(), q.point(), opts.row_budget_bytes / row_bytes)
        });
        let reference = [p.point().to_vec(), q.point().to_vec()];
        let mut guard = opts.zigzag.map(ZigzagGuard::new);
        let gap = dist(p.point(), q.point());
        if let Some(g) = guard.as_mut() {
            g.start(gap);
        }
        let mut diag = Diagnostics::default();
        diag.gaps.push(gap);
        if opts.record_trace {
            diag.trace.push((p.point().to_vec(), q.point().to_vec()));
        }
        Engine {
            sets: [a, b],
            it: [p, q],
            opts: opts.clone(),
            cache,
            synth: [Vec::new(), Vec::new()],
            filter: [None, None],
            scans: [None, None],
            guard,
            reference,
            iterations: 0,
            diag,
            noise: 1e-12 * a.max_norm().max(b.max_norm()),
            scale: a.max_norm().max(b.max_norm()),
        }
    }

    fn set(&self, side: Side) -> &'a PointSet {
        self.sets[side.index()]
    }

    fn x(&self, side: Side) -> &[f64] {
        self.it[side.index()].point()
    }

    fn gap(&self) -> f64 {
        dist(self.it[0].point(), self.it[1].point())
    }

    /// `(y - x) . u_k` for every vertex of `side`, where `x` is that side's
    /// iterate and `y` the other one.
    fn all_values(&self, side: Side) -> Vec<f64> {
        match &self.cache {
            Some(c) => {
                let own = c.dots(side, side);
                let oth = c.dots(side.other(), side);
                oth.iter().zip(own).map(|(o, s)| o - s).collect()
            }
            None => {
                let dir = sub(self.x(side.other()), self.x(side));
                self.set(side).dots_with(&dir)
            }
        }
    }

    /// Best `(k, value)` over the listed vertices.
    fn subset_best(&self, side: Side, ids: &[usize]) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        let mut consider = |k: usize, v: f64| {
            if best.is_none_or(|(bk, bv)| v > bv || (v == bv && k < bk)) {
                best = Some((k, v));
            }
        };
        match &self.cache {
            Some(c) => {
                let own = c.dots(side, side);
                let oth = c.dots(side.other(), side);
                for &k in ids {
                    consider(k, oth[k] - own[k]);
                }
            }
            None => {
                let dir = sub(self.x(side.other()), self.x(side));
                let set = self.set(side);
                for &k in ids {
                    consider(k, dot(&dir, set.point(k)));
                }
            }
        }
        best
    }

    fn argmax(values: &[f64]) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (k, &v) in values.iter().enumerate() {
            if best.is_none_or(|(_, bv)| v > bv) {
                best = Some((k, v));
            }
        }
        best
    }

    /// Full scan of `side`, also rebuilding that side's non-bounding subset.
    fn full_scan(&mut self, side: Side) -> (usize, f64) {
        let values = self.full_values(side);
        Self::argmax(&values).expect("point sets are nonempty")
    }

    fn full_values(&mut self, side: Side) -> Rc<Vec<f64>> {
        if let Some(v) = &self.scans[side.index()] {
            return v.clone();
        }
        let values = Rc::new(self.all_values(side));
        self.scans[side.index()] = Some(values.clone());
        if self.opts.filter {
            let x = self.x(side);
            let y = self.x(side.other());
            // vertices at the level itself (e.g. the iterate's own vertex)
            // are kept, so rounding cannot decide membership
            let slack = TIE_WINDOW * dist(x, y) * self.scale;
            let level = dot(y, x) - norm_sq(x) - slack;
            let keep = &mut self.filter[side.index()];
            let keep = keep.get_or_insert_with(Vec::new);
            keep.clear();
            keep.extend((0..values.len()).filter(|&k| values[k] > level));
        }
        values
    }

    /// Extreme vertex of `side` along the gap direction, with its exact
    /// value. Near-ties (a face orthogonal to the gap) go to the vertex
    /// farthest from the iterate, so the stop test does not hinge on
    /// rounding.
    fn extreme(&mut self, side: Side) -> (usize, f64) {
        let values = self.full_values(side);
        let (_, top) = Self::argmax(&values).expect("point sets are nonempty");
        let x = self.x(side);
        let dir = sub(self.x(side.other()), x);
        let window = TIE_WINDOW * norm_sq(&dir).sqrt() * self.scale;
        let set = self.set(side);
        let mut best = (usize::MAX, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for (k, &v) in values.iter().enumerate() {
            if v < top - window {
                continue;
            }
            let r = crate::geometry::dist_sq(x, set.point(k));
            if r > best.2 {
                best = (k, dot(&dir, set.point(k)), r);
            }
        }
        (best.0, best.1)
    }

    /// Squared-gap reduction from moving this side's iterate toward `point`.
    fn progress(&self, side: Side, point: &[f64]) -> f64 {
        let x = self.x(side);
        let y = self.x(side.other());
        let num: f64 = x
            .iter()
            .zip(y)
            .zip(point)
            .map(|((xi, yi), ti)| (yi - xi) * (ti - xi))
            .sum();
        let den = crate::geometry::dist_sq(x, point);
        if den == 0.0 || num <= 0.0 {
            return 0.0;
        }
        let alpha = (num / den).min(1.0);
        2.0 * alpha * num - alpha * alpha * den
    }

    /// Among the accepted original vertex and synthetic vertices passing
    /// `accept`, the one whose step shrinks the gap most.
    fn best_candidate(&self, side: Side, original: usize, accept: impl Fn(f64) -> bool) -> Choice {
        let set = self.set(side);
        let mut best = Choice {
            tag: PivotTag::Vertex(side, original),
            target: Target::vertex(set, side, original),
        };
        if self.synth[side.index()].is_empty() {
            return best;
        }
        let dir = sub(self.x(side.other()), self.x(side));
        let mut best_gain = self.progress(side, set.point(original));
        for (k, t) in self.synth[side.index()].iter().enumerate() {
            if !accept(dot(&dir, &t.point)) {
                continue;
            }
            let gain = self.progress(side, &t.point);
            if gain > best_gain {
                best_gain = gain;
                best = Choice {
                    tag: PivotTag::Synthetic(side, k),
                    target: t.clone(),
                };
            }
        }
        best
    }

    /// A pivot of `side` toward the other iterate, if one exists.
    fn side_pivot(&mut self, side: Side) -> Option<Choice> {
        let x = self.x(side);
        let y = self.x(side.other());
        let threshold = 0.5 * (norm_sq(y) - norm_sq(x));
        let mut found = None;
        if self.opts.filter {
            if let Some(sub) = self.filter[side.index()].as_deref() {
                if !sub.is_empty() {
                    found = self
                        .subset_best(side, sub)
                        .filter(|&(_, v)| v >= threshold)
                        .map(|(k, _)| k);
                }
            }
        }
        if found.is_none() {
            let (k, v) = self.full_scan(side);
            if v >= threshold {
                found = Some(k);
            }
        }
        found.map(|k| self.best_candidate(side, k, |v| v >= threshold))
    }

    fn record_step(&mut self, tag: PivotTag) {
        self.iterations += 1;
        let gap = self.gap();
        self.diag.gaps.push(gap);
        if self.opts.record_trace {
            self.diag
                .trace
                .push((self.x(Side::A).to_vec(), self.x(Side::B).to_vec()));
        }
        let pair = self.guard.as_mut().and_then(|g| g.observe(tag, gap));
        if let Some((s, t)) = pair {
            let side = s.side();
            let mid = Target::midpoint(&self.target_of(s), &self.target_of(t));
            self.diag.synthetic.push((side, mid.weights.clone()));
            self.synth[side.index()].push(mid);
        }
    }

    fn target_of(&self, tag: PivotTag) -> Target {
        match tag {
            PivotTag::Vertex(side, k) => Target::vertex(self.set(side), side, k),
            PivotTag::Synthetic(side, k) => self.synth[side.index()][k].clone(),
        }
    }

    fn apply(&mut self, target: &Target, alpha: f64) {
        let side = target.side;
        if let Some(c) = self.cache.as_mut() {
            c.update(self.sets[0], self.sets[1], target, alpha)
                .expect("solver-owned cache is never stale");
        }
        self.it[side.index()].step_toward(&target.weights, &target.point, alpha);
        self.scans = [None, None];
        if self
            .cache
            .as_ref()
            .is_some_and(|c| c.updates_since_refresh() >= REFRESH_EVERY)
        {
            self.refresh_cache();
        }
        self.reference[side.index()] = target.point.clone();
    }

    fn single_step(&mut self, choice: Choice) {
        let side = choice.target.side;
        let alpha = segment_step(self.x(side.other()), self.x(side), &choice.target.point).unwrap_or(0.0);
        self.apply(&choice.target, alpha);
        self.record_step(choice.tag);
    }

    fn joint(&mut self, ca: Choice, cb: Choice) {
        let gram = SegmentGram::from_pair(&SegmentPair {
            p: self.x(Side::A),
            v: &ca.target.point,
            p2: self.x(Side::B),
            v2: &cb.target.point,
        });
        let (s, t) = gram.solve();
        self.apply(&ca.target, s);
        self.apply(&cb.target, t);
        self.diag.joint_steps += 1;
        self.record_step(if s >= t { ca.tag } else { cb.tag });
    }

    fn refresh_cache(&mut self) -> bool {
        let (p, q) = (self.it[0].point(), self.it[1].point());
        match self.cache.as_mut() {
            Some(c) if c.updates_since_refresh() > 0 => {
                c.refresh(self.sets[0], self.sets[1], p, q);
                self.filter = [None, None];
                self.scans = [None, None];
                self.diag.cache_refreshes += 1;
                true
            }
            _ => false,
        }
    }

    /// With `certify`, a witness is only returned after a scan against
    /// fresh products; otherwise cached products are trusted.
    fn phase1(&mut self, certify: bool) -> Phase1 {
        let eps = self.opts.epsilon;
        loop {
            let gap = self.gap();
            if gap <= eps * dist(self.x(Side::A), &self.reference[0])
                || gap <= eps * dist(self.x(Side::B), &self.reference[1])
            {
                return Phase1::Intersect;
            }
            if self.iterations >= self.opts.max_iters {
                return Phase1::MaxIter;
            }
            let pa = self.side_pivot(Side::A);
            let pb = if pa.is_none() || self.opts.joint_steps {
                self.side_pivot(Side::B)
            } else {
                None
            };
            match (pa, pb) {
                (Some(ca), Some(cb)) if self.opts.joint_steps => self.joint(ca, cb),
                (Some(ca), _) => self.single_step(ca),
                (None, Some(cb)) => self.single_step(cb),
                (None, None) => {
                    if certify && self.refresh_cache() {
                        continue;
                    }
                    return Phase1::Witness;
                }
            }
        }
    }

    fn estimate(&mut self) -> GapEstimate {
        let (ja, va) = self.extreme(Side::A);
        let (jb, vb) = self.extreme(Side::B);
        let p = self.x(Side::A);
        let q = self.x(Side::B);
        let delta = dist(p, q);
        let offset = 0.5 * (norm_sq(p) - norm_sq(q));
        // h = p - p'; h.v = -va, h.v' = vb
        let delta_v = (-va - offset) / delta;
        let delta_v2 = (offset - vb) / delta;
        // a witness pair has delta_lower <= delta; clamp rounding
        let delta_lower = ((-va - vb) / delta).min(delta);
        GapEstimate {
            delta,
            delta_lower,
            e: delta - delta_lower,
            e_v: 0.5 * delta - delta_v,
            e_v2: 0.5 * delta - delta_v2,
            rho: dist(p, self.set(Side::A).point(ja)),
            rho2: dist(q, self.set(Side::B).point(jb)),
            v_index: ja,
            v2_index: jb,
        }
    }

    fn weak_step(&mut self, side: Side, extreme: usize) {
        let x = self.x(side);
        let level = dot(self.x(side.other()), x) - norm_sq(x);
        let choice = self.best_candidate(side, extreme, |v| v > level);
        self.diag.weak_steps += 1;
        self.single_step(choice);
    }

    fn phase2(&mut self) -> (Status, Option<GapEstimate>) {
        let eps = self.opts.epsilon;
        loop {
            let est = self.estimate();
            self.diag.bounds.push((est.delta_lower, est.delta));
            if est.is_strong(eps) || est.e <= self.noise {
                return (Status::Separated, Some(est));
            }
            if self.iterations >= self.opts.max_iters {
                return (Status::MaxIterations, Some(est));
            }
            // step the side whose gate is open by more
            let over_a = est.e_v - (0.5 * eps * est.rho + self.noise);
            let over_b = est.e_v2 - (0.5 * eps * est.rho2 + self.noise);
            if over_a > 0.0 && over_a >= over_b {
                self.weak_step(Side::A, est.v_index);
            } else if over_b > 0.0 {
                self.weak_step(Side::B, est.v2_index);
            } else {
                // E > eps * max(rho, rho') forces one of the two branches.
                return (Status::Separated, Some(est));
            }
            match self.phase1(false) {
                Phase1::Witness => {}
                Phase1::Intersect => return (Status::Intersecting, None),
                Phase1::MaxIter => return (Status::MaxIterations, None),
            }
        }
    }

    /// Bounds recomputed from coordinates rather than cached products.
    fn fresh_estimate(&mut self) -> GapEstimate {
        let cache = self.cache.take();
        let filter = std::mem::take(&mut self.filter);
        self.scans = [None, None];
        let est = self.estimate();
        self.cache = cache;
        self.filter = filter;
        self.scans = [None, None];
        est
    }

    fn support_planes(&self, est: &GapEstimate) -> Option<(Hyperplane, Hyperplane)> {
        let h = sub(self.x(Side::A), self.x(Side::B));
        let hv = dot(&h, self.set(Side::A).point(est.v_index));
        let hv2 = dot(&h, self.set(Side::B).point(est.v2_index));
        Some((
            Hyperplane::new(h.clone(), hv).ok()?,
            Hyperplane::new(h, hv2).ok()?,
        ))
    }

    fn finish(mut self) -> ([ConvexIterate; 2], Diagnostics) {
        let [r0, r1] = self.reference;
        self.diag.last_pivots = (r0, r1);
        self.diag.row_misses = self.cache.as_ref().map_or(0, |c| c.row_misses());
        (self.it, self.diag)
    }

    fn sparsity(&self) -> usize {
        self.it[0].sparsity() + self.it[1].sparsity()
    }
}

fn check_inputs(a: &PointSet, b: &PointSet, opts: &TaOptions) -> Result<()> {
    opts.validate()?;
    a.check_same_dim(b)
}

fn check_iterate(set: &PointSet, it: &ConvexIterate) -> Result<()> {
    if it.coefficients().len() != set.len() || it.point().len() != set.dim() {
        return Err(HullError::DimensionMismatch {
            expected: set.len(),
            found: it.coefficients().len(),
        });
    }
    Ok(())
}

/// Runs Triangle Algorithm I from `(p0, p0')` (centroids by default).
pub fn ta1_solve(
    a: &PointSet,
    b: &PointSet,
    p0: Option<ConvexIterate>,
    q0: Option<ConvexIterate>,
    opts: &TaOptions,
) -> Result<Ta1Outcome> {
    check_inputs(a, b, opts)?;
    let p = p0.unwrap_or_else(|| ConvexIterate::centroid(a));
    let q = q0.unwrap_or_else(|| ConvexIterate::centroid(b));
    check_iterate(a, &p)?;
    check_iterate(b, &q)?;
    let start = Instant::now();
    let mut eng = Engine::new(a, b, p, q, opts);
    let phase = eng.phase1(true);
    let wall_time = start.elapsed();
    let gap = eng.gap();
    let (status, result) = match phase {
        Phase1::Intersect => (Status::Intersecting, Ta1Result::ApproxIntersection),
        Phase1::MaxIter => (Status::MaxIterations, Ta1Result::MaxIterations),
        Phase1::Witness => (
            Status::Separated,
            Ta1Result::Witness(WitnessCertificate::new(eng.it[0].clone(), eng.it[1].clone())?),
        ),
    };
    let report = SolveReport {
        status,
        iterations: eng.iterations,
        wall_time,
        distance_upper: gap,
        distance_lower: 0.0,
        sparsity: eng.sparsity(),
        support_planes: None,
    };
    let ([p, q], diagnostics) = eng.finish();
    Ok(Ta1Outcome {
        report,
        result,
        p,
        q,
        diagnostics,
    })
}

fn finish_phase2(mut eng: Engine<'_>, start: Instant) -> Result<TaOutcome> {
    let (status, est) = eng.phase2();
    let est = match (status, est) {
        (Status::Separated, Some(_)) if eng.cache.is_some() => Some(eng.fresh_estimate()),
        (_, e) => e,
    };
    let wall_time = start.elapsed();
    let gap = eng.gap();
    let (witness, planes, lower) = match (status, est) {
        (Status::Separated, Some(e)) => (
            Some(WitnessCertificate::new(eng.it[0].clone(), eng.it[1].clone())?),
            eng.support_planes(&e),
            e.delta_lower,
        ),
        _ => (None, None, 0.0),
    };
    let report = SolveReport {
        status,
        iterations: eng.iterations,
        wall_time,
        distance_upper: gap,
        distance_lower: lower,
        sparsity: eng.sparsity(),
        support_planes: planes,
    };
    let ([p, q], diagnostics) = eng.finish();
    Ok(TaOutcome {
        report,
        witness,
        estimate: if status == Status::Separated { est } else { None },
        p,
        q,
        diagnostics,
    })
}

/// Runs Triangle Algorithm II from a witness pair.
pub fn ta2_solve(
    witness: &WitnessCertificate,
    a: &PointSet,
    b: &PointSet,
    opts: &TaOptions,
) -> Result<TaOutcome> {
    check_inputs(a, b, opts)?;
    check_iterate(a, &witness.p)?;
    check_iterate(b, &witness.q)?;
    let fresh = WitnessCertificate::new(witness.p.clone(), witness.q.clone())?;
    if !fresh.is_valid(a, b) {
        return Err(HullError::NotWitness);
    }
    let start = Instant::now();
    let eng = Engine::new(a, b, witness.p.clone(), witness.q.clone(), opts);
    finish_phase2(eng, start)
}

/// Both phases: decides intersection and, when the hulls are disjoint,
/// approximates their distance and supporting hyperplanes. The iteration
/// cap covers both phases together.
pub fn solve(a: &PointSet, b: &PointSet, opts: &TaOptions) -> Result<TaOutcome> {
    solve_from(a, b, None, None, opts)
}

pub fn solve_from(
    a: &PointSet,
    b: &PointSet,
    p0: Option<ConvexIterate>,
    q0: Option<ConvexIterate>,
    opts: &TaOptions,
) -> Result<TaOutcome> {
    check_inputs(a, b, opts)?;
    let p = p0.unwrap_or_else(|| ConvexIterate::centroid(a));
    let q = q0.unwrap_or_else(|| ConvexIterate::centroid(b));
    check_iterate(a, &p)?;
    check_iterate(b, &q)?;
    let start = Instant::now();
    let mut eng = Engine::new(a, b, p, q, opts);
    match eng.phase1(true) {
        Phase1::Witness => finish_phase2(eng, start),
        phase => {
            let status = if phase == Phase1::Intersect {
                Status::Intersecting
            } else {
                Status::MaxIterations
            };
            let report = SolveReport {
                status,
                iterations: eng.iterations,
                wall_time: start.elapsed(),
                distance_upper: eng.gap(),
                distance_lower: 0.0,
                sparsity: eng.sparsity(),
                support_planes: None,
            };
            let ([p, q], diagnostics) = eng.finish();
            Ok(TaOutcome {
                report,
                witness: None,
                estimate: None,
                p,
                q,
                diagnostics,
            })
        }
    }
}
