//! Point-set storage and iterates kept as explicit convex combinations.

use crate::error::{HullError, Result};
use crate::geometry::{dist_sq, dot, norm_sq};

/// Coefficients below this are snapped to zero after every update.
pub const COEFF_SNAP: f64 = 1e-15;

/// A finite set of points in R^m, stored row-major, with squared norms
/// cached at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    data: Vec<f64>,
    sq_norms: Vec<f64>,
}

impl PointSet {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let first = points.first().ok_or(HullError::NoPoints)?;
        let dim = first.len();
        if dim == 0 {
            return Err(HullError::ZeroDimension);
        }
        let mut data = Vec::with_capacity(points.len() * dim);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(HullError::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(HullError::NonFinite { index: i });
            }
            data.extend_from_slice(p);
        }
        Ok(Self::from_flat_unchecked(dim, data))
    }

    /// Builds a set from a row-major buffer of `len * dim` coordinates.
    pub fn from_flat(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(HullError::ZeroDimension);
        }
        if data.is_empty() {
            return Err(HullError::NoPoints);
        }
        if data.len() % dim != 0 {
            return Err(HullError::DimensionMismatch {
                expected: dim,
                found: data.len() % dim,
            });
        }
        if let Some(pos) = data.iter().position(|c| !c.is_finite()) {
            return Err(HullError::NonFinite { index: pos / dim });
        }
        Ok(Self::from_flat_unchecked(dim, data))
    }

    fn from_flat_unchecked(dim: usize, data: Vec<f64>) -> Self {
        let sq_norms = data.chunks_exact(dim).map(norm_sq).collect();
        PointSet { dim, data, sq_norms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.sq_norms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sq_norms.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.data.chunks_exact(self.dim)
    }

    #[inline]
    pub fn sq_norm(&self, i: usize) -> f64 {
        self.sq_norms[i]
    }

    pub fn sq_norms(&self) -> &[f64] {
        &self.sq_norms
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }

    /// Largest Euclidean norm over the set.
    pub fn max_norm(&self) -> f64 {
        self.sq_norms.iter().fold(0.0f64, |m, &s| m.max(s)).sqrt()
    }

    /// `(x . v_i)` for every point.
    pub fn dots_with(&self, x: &[f64]) -> Vec<f64> {
        self.iter().map(|v| dot(v, x)).collect()
    }

    /// Exact diameter by the full pairwise scan.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.len() {
            let vi = self.point(i);
            for j in (i + 1)..self.len() {
                best = best.max(dist_sq(vi, self.point(j)));
            }
        }
        best.sqrt()
    }

    pub fn translated(&self, shift: &[f64]) -> PointSet {
        assert_eq!(shift.len(), self.dim);
        let data = self
            .iter()
            .flat_map(|v| v.iter().zip(shift).map(|(a, b)| a + b))
            .collect();
        Self::from_flat_unchecked(self.dim, data)
    }

    pub fn check_same_dim(&self, other: &PointSet) -> Result<()> {
        if self.dim != other.dim {
            return Err(HullError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

/// A point of `conv(V)` together with its coefficients over `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexIterate {
    coefficients: Vec<f64>,
    point: Vec<f64>,
}

impl ConvexIterate {
    pub fn vertex(set: &PointSet, i: usize) -> Self {
        let mut coefficients = vec![0.0; set.len()];
        coefficients[i] = 1.0;
        ConvexIterate {
            coefficients,
            point: set.point(i).to_vec(),
        }
    }

    pub fn centroid(set: &PointSet) -> Self {
        let n = set.len();
        let w = 1.0 / n as f64;
        Self::from_coefficients(set, vec![w; n]).expect("uniform weights are valid")
    }

    /// Validates and normalizes the weights, then synthesizes the point.
    pub fn from_coefficients(set: &PointSet, mut coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.len() != set.len() {
            return Err(HullError::DimensionMismatch {
                expected: set.len(),
                found: coefficients.len(),
            });
        }
        if coefficients.iter().any(|&c| !c.is_finite() || c < 0.0) {
            return Err(HullError::InvalidParameter(
                "coefficients must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = coefficients.iter().sum();
        if !(sum > 0.0) {
            return Err(HullError::InvalidParameter(
                "coefficients must not all be zero".into(),
            ));
        }
        for c in &mut coefficients {
            *c /= sum;
        }
        let point = synthesize(set, &coefficients);
        Ok(ConvexIterate { coefficients, point })
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Number of vertices carrying a nonzero coefficient.
    pub fn sparsity(&self) -> usize {
        self.coefficients.iter().filter(|&&c| c > 0.0).count()
    }

    /// `x <- (1 - alpha) x + alpha * target`, where `target` is the convex
    /// combination `weights` (vertex index, weight) with coordinates
    /// `target_point`.
    pub fn step_toward(&mut self, weights: &[(usize, f64)], target_point: &[f64], alpha: f64) {
        debug_assert!((0.0..=1.0).contains(&alpha));
        if alpha == 0.0 {
            return;
        }
        let keep = 1.0 - alpha;
        for c in &mut self.coefficients {
            *c *= keep;
        }
        for &(i, w) in weights {
            self.coefficients[i] += alpha * w;
        }
        for c in &mut self.coefficients {
            if *c < COEFF_SNAP {
                *c = 0.0;
            }
        }
        crate::geometry::lerp_in_place(&mut self.point, target_point, alpha);
    }

    pub fn step_toward_vertex(&mut self, set: &PointSet, i: usize, alpha: f64) {
        self.step_toward(&[(i, 1.0)], set.point(i), alpha);
    }

    pub fn coefficient_sum(&self) -> f64 {
        self.coefficients.iter().sum()
    }

    /// `|| point - sum_i lambda_i v_i ||`
    pub fn resynthesis_error(&self, set: &PointSet) -> f64 {
        dist_sq(&self.point, &synthesize(set, &self.coefficients)).sqrt()
    }
}

fn synthesize(set: &PointSet, coefficients: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; set.dim()];
    for (v, &c) in set.iter().zip(coefficients) {
        if c != 0.0 {
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
    }
    out
}
