//! Wolfe's active-set method for the minimum-norm point of a polytope given
//! by a linear minimization oracle over its atoms.

use super::linalg::affine_min_norm;

const WEIGHT_FLOOR: f64 = 1e-14;

pub(crate) struct MinNorm<Id> {
    pub atoms: Vec<(Id, Vec<f64>)>,
    pub weights: Vec<f64>,
}

fn combine<Id>(atoms: &[(Id, Vec<f64>)], weights: &[f64], dim: usize) -> Vec<f64> {
    let mut x = vec![0.0; dim];
    for ((_, a), w) in atoms.iter().zip(weights) {
        for (xi, ai) in x.iter_mut().zip(a) {
            *xi += w * ai;
        }
    }
    x
}

fn dotp(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `lmo(x)` must return an atom minimizing `x . a`. `scale` is the largest
/// atom norm, used for the relative stopping rule.
pub(crate) fn min_norm_point<Id: Copy + PartialEq>(
    mut lmo: impl FnMut(&[f64]) -> (Id, Vec<f64>),
    start: (Id, Vec<f64>),
    scale: f64,
    max_major: usize,
) -> MinNorm<Id> {
    let dim = start.1.len();
    let scale2 = (scale * scale).max(f64::MIN_POSITIVE);
    let mut atoms = vec![start];
    let mut weights = vec![1.0];
    let mut x = atoms[0].1.clone();
    for _ in 0..max_major {
        let xx = dotp(&x, &x);
        if xx <= 1e-28 * scale2 {
            break;
        }
        let (id, a) = lmo(&x);
        let xa = dotp(&x, &a);
        if xx - xa <= 1e-14 * scale2 || atoms.iter().any(|(k, _)| *k == id) {
            break;
        }
        atoms.push((id, a));
        weights.push(0.0);
        loop {
            let refs: Vec<&[f64]> = atoms.iter().map(|(_, a)| a.as_slice()).collect();
            let Some(mu) = affine_min_norm(&refs) else {
                // numerically dependent: drop the newest atom and stop
                atoms.pop();
                weights.pop();
                return MinNorm { atoms, weights };
            };
            if mu.iter().all(|&m| m > WEIGHT_FLOOR) {
                weights = mu;
                break;
            }
            let mut theta = 1.0f64;
            for (l, m) in weights.iter().zip(&mu) {
                if *m <= WEIGHT_FLOOR && l - m > 0.0 {
                    theta = theta.min(l / (l - m));
                }
            }
            for (l, m) in weights.iter_mut().zip(&mu) {
                *l = (1.0 - theta) * *l + theta * m;
            }
            let drop = (0..weights.len())
                .min_by(|&i, &j| weights[i].total_cmp(&weights[j]))
                .unwrap();
            let mut k = 0;
            atoms.retain(|_| {
                let keep = k != drop && weights[k] > WEIGHT_FLOOR;
                k += 1;
                keep
            });
            weights = weights
                .iter()
                .enumerate()
                .filter(|&(i, &w)| i != drop && w > WEIGHT_FLOOR)
                .map(|(_, &w)| w)
                .collect();
            let s: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= s);
        }
        x = combine(&atoms, &weights, dim);
    }
    MinNorm { atoms, weights }
}
