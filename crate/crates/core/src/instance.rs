//! Synthetic two-ball instances.
//!
//! Both sets are drawn uniformly from unit balls around one shared random
//! center; the second set is then shifted along a random unit direction by
//! `translation_factor * max(diam(V), diam(V'))`. A factor of zero leaves the
//! two samples on top of each other, factors above one push them apart.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{HullError, Result};
use crate::hull::PointSet;

/// Parameters of one synthetic instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceSpec {
    pub dim: usize,
    pub na: usize,
    pub nb: usize,
    pub translation_factor: f64,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(dim: usize, na: usize, nb: usize, translation_factor: f64, seed: u64) -> Self {
        InstanceSpec {
            dim,
            na,
            nb,
            translation_factor,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(HullError::ZeroDimension);
        }
        if self.na == 0 || self.nb == 0 {
            return Err(HullError::NoPoints);
        }
        if !(self.translation_factor >= 0.0) || !self.translation_factor.is_finite() {
            return Err(HullError::InvalidParameter(format!(
                "translation factor must be finite and nonnegative, got {}",
                self.translation_factor
            )));
        }
        Ok(())
    }
}

/// A generated pair plus the quantities used to place it.
#[derive(Debug, Clone)]
pub struct Instance {
    pub a: PointSet,
    pub b: PointSet,
    pub center: Vec<f64>,
    pub direction: Vec<f64>,
    pub diam_a: f64,
    pub diam_b: f64,
    pub shift: f64,
}

fn unit_direction(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-300 {
            return g.into_iter().map(|x| x / n).collect();
        }
    }
}

fn sample_ball(rng: &mut ChaCha8Rng, center: &[f64], count: usize) -> Vec<f64> {
    let dim = center.len();
    let mut out = Vec::with_capacity(count * dim);
    for _ in 0..count {
        let dir = unit_direction(rng, dim);
        let u: f64 = rng.random();
        let r = u.powf(1.0 / dim as f64);
        out.extend(dir.iter().zip(center).map(|(d, c)| c + r * d));
    }
    out
}

/// Deterministic for a fixed spec (ChaCha8 stream seeded from `spec.seed`).
pub fn generate_two_balls(spec: &InstanceSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let center: Vec<f64> = (0..spec.dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    let a = PointSet::from_flat(spec.dim, sample_ball(&mut rng, &center, spec.na))?;
    let b0 = PointSet::from_flat(spec.dim, sample_ball(&mut rng, &center, spec.nb))?;
    let direction = unit_direction(&mut rng, spec.dim);
    let diam_a = a.diameter();
    let diam_b = b0.diameter();
    let shift = spec.translation_factor * diam_a.max(diam_b);
    let offset: Vec<f64> = direction.iter().map(|d| d * shift).collect();
    let b = b0.translated(&offset);
    Ok(Instance {
        a,
        b,
        center,
        direction,
        diam_a,
        diam_b,
        shift,
    })
}
