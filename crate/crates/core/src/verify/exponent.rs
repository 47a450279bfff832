use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::catalog::ProductSpec;
use crate::entropy::{directional_exponent_product, exponent_weights};

pub const DEFAULT_RESTARTS: usize = 50;

const MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentMaximum {
    pub value: f64,
    /// Unit vector attaining `value`.
    pub argmax: Vec<f64>,
}

/// Maximizes the directional growth exponent over the unit sphere.
///
/// The exponent is piecewise linear: on each region with a fixed sign pattern
/// and sort order of `|x|` it equals `g · x` for a constant vector `g`. Each
/// restart starts from a seeded Gaussian direction and iterates the projected
/// step `x <- (x + g(x)) / |x + g(x)|` until it stops moving.
pub fn maximize_exponent(target: impl Into<ProductSpec>, restarts: usize, seed: u64) -> ExponentMaximum {
    let product = target.into();
    let blocks: Vec<Vec<f64>> =
        product.factors().iter().map(|f| exponent_weights(f).iter().map(|&w| 2.0 * w as f64).collect()).collect();
    let dim = product.rank() as usize;
    let objective = |x: &[f64]| directional_exponent_product(x, &product).expect("length matches total rank");

    let mut best = ExponentMaximum { value: f64::NEG_INFINITY, argmax: Vec::new() };
    for restart in 0..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(restart as u64);
        let mut x: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
        normalize(&mut x);

        for _ in 0..MAX_ITERATIONS {
            let g = subgradient(&x, &blocks);
            let mut next: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi + gi).collect();
            normalize(&mut next);
            let moved = x.iter().zip(&next).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
            x = next;
            if moved < 1e-15 {
                break;
            }
        }

        let value = objective(&x);
        if value > best.value {
            best = ExponentMaximum { value, argmax: x };
        }
    }
    best
}

/// Gradient of the linear piece containing `x`: the largest weight goes to
/// the largest `|x_i|` of each block, with the sign of `x_i`.
fn subgradient(x: &[f64], blocks: &[Vec<f64>]) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    let mut offset = 0;
    for weights in blocks {
        let mut idx: Vec<usize> = (offset..offset + weights.len()).collect();
        idx.sort_by(|&i, &j| x[j].abs().total_cmp(&x[i].abs()));
        for (&i, &w) in idx.iter().zip(weights) {
            g[i] = if x[i] < 0.0 { -w } else { w };
        }
        offset += weights.len();
    }
    g
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
}
