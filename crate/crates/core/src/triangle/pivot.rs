use crate::error::{HullError, Result};
use crate::geometry::{dot, norm_sq, sub};
use crate::hull::PointSet;

/// Which of the two input sets a vertex (or a moving iterate) belongs to.
/// `A` holds `V` and the iterate `p`; `B` holds `V'` and `p'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            Side::A => 0,
            Side::B => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotKind {
    /// A vertex of `V` that is a `p'`-pivot for `p`.
    InV,
    /// A vertex of `V'` that is a `p`-pivot for `p'`.
    InVPrime,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PivotResult {
    pub kind: PivotKind,
    pub index: usize,
    pub is_weak: bool,
}

impl PivotResult {
    pub const NONE: PivotResult = PivotResult {
        kind: PivotKind::None,
        index: 0,
        is_weak: false,
    };
}

/// Argmax of `dir . v` over `set` (restricted to `subset` when given). Ties
/// go to the lowest index.
pub(crate) fn argmax_direction(
    set: &PointSet,
    dir: &[f64],
    subset: Option<&[usize]>,
) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    let mut consider = |j: usize| {
        let val = dot(dir, set.point(j));
        if best.is_none_or(|(_, b)| val > b) {
            best = Some((j, val));
        }
    };
    match subset {
        Some(ids) => ids.iter().copied().for_each(&mut consider),
        None => (0..set.len()).for_each(&mut consider),
    }
    best
}

/// `x`'s best pivot in `set` toward `y`: argmax of `(y - x) . v`, accepted
/// when `2 (y - x) . v >= |y|^2 - |x|^2`.
fn side_pivot(set: &PointSet, x: &[f64], y: &[f64], subset: Option<&[usize]>) -> Option<usize> {
    let dir = sub(y, x);
    let rhs = norm_sq(y) - norm_sq(x);
    argmax_direction(set, &dir, subset)
        .filter(|&(_, val)| 2.0 * val >= rhs)
        .map(|(j, _)| j)
}

/// Searches `V` first, then `V'`. With a filter, each side's subset is
/// scanned before that side's full set.
pub fn find_pivot(
    p: &[f64],
    p2: &[f64],
    a: &PointSet,
    b: &PointSet,
    filter: Option<(&[usize], &[usize])>,
) -> PivotResult {
    let search = |set: &PointSet, x: &[f64], y: &[f64], subset: Option<&[usize]>| {
        subset
            .and_then(|ids| side_pivot(set, x, y, Some(ids)))
            .or_else(|| side_pivot(set, x, y, None))
    };
    if let Some(j) = search(a, p, p2, filter.map(|f| f.0)) {
        return PivotResult {
            kind: PivotKind::InV,
            index: j,
            is_weak: false,
        };
    }
    if let Some(j) = search(b, p2, p, filter.map(|f| f.1)) {
        return PivotResult {
            kind: PivotKind::InVPrime,
            index: j,
            is_weak: false,
        };
    }
    PivotResult::NONE
}

/// For normal `h`: `v = argmin h.x` over `V`, `v' = argmax h.x` over `V'`,
/// and the plane gap `(h.v - h.v') / |h|` (negative when `h` does not
/// separate).
pub fn support_extremes(h: &[f64], a: &PointSet, b: &PointSet) -> Result<(usize, usize, f64)> {
    let hn = norm_sq(h).sqrt();
    if hn == 0.0 {
        return Err(HullError::ZeroNormal);
    }
    let neg: Vec<f64> = h.iter().map(|x| -x).collect();
    let (i, min_neg) = argmax_direction(a, &neg, None).ok_or(HullError::NoPoints)?;
    let (j, max_b) = argmax_direction(b, h, None).ok_or(HullError::NoPoints)?;
    Ok((i, j, (-min_neg - max_b) / hn))
}
