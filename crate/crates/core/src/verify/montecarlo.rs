//! Seeded Monte Carlo estimate of the ball volume.
//!
//! Points are drawn uniformly from `{t >= 0, |t| <= T}`. Sorting each factor
//! block folds the orthant onto the radial cone `prod_k r_k!` times, so
//!
//! ```text
//! V(T) = vol(ball ∩ orthant) * E[f(sort t)] / prod_k r_k!
//! ```
//!
//! Samples are generated in fixed-size blocks; block `i` uses the ChaCha
//! stream `i` of the caller's seed, and block results are reduced in block
//! order, so the estimate does not depend on how blocks are scheduled. The
//! radius enters only as a scale factor, so calls with the same seed at
//! different radii reuse the same underlying samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{RadialModel, VerifyError, VolumeEstimate};

const BLOCK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy)]
struct BlockSums {
    max: f64,
    s1: f64,
    s2: f64,
}

/// `ln` of the volume of the unit ball in `R^n`.
fn ln_unit_ball(n: usize) -> f64 {
    let mut v = if n.is_multiple_of(2) { 1.0 } else { 2.0 };
    let mut k = if n.is_multiple_of(2) { 2 } else { 3 };
    while k <= n {
        v *= 2.0 * std::f64::consts::PI / k as f64;
        k += 2;
    }
    v.ln()
}

fn run_block(model: &RadialModel, radius: f64, seed: u64, block: u64, count: u64) -> BlockSums {
    let n = model.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    let mut logs = Vec::with_capacity(count as usize);
    let mut t = vec![0.0; n];
    for _ in 0..count {
        let mut norm2 = 0.0;
        for v in t.iter_mut() {
            let g: f64 = rng.sample(StandardNormal);
            *v = g.abs();
            norm2 += g * g;
        }
        let u: f64 = rng.random();
        let scale = radius * u.powf(1.0 / n as f64) / norm2.sqrt();
        t.iter_mut().for_each(|v| *v *= scale);
        logs.push(model.log_density_symmetrized(&mut t));
    }
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return BlockSums { max, s1: 0.0, s2: 0.0 };
    }
    let (mut s1, mut s2) = (0.0, 0.0);
    for l in logs {
        let e = (l - max).exp();
        s1 += e;
        s2 += e * e;
    }
    BlockSums { max, s1, s2 }
}

pub(crate) fn log_volume(
    model: &RadialModel,
    radius: f64,
    samples: u64,
    seed: u64,
) -> Result<VolumeEstimate, VerifyError> {
    if samples == 0 {
        return Err(VerifyError::NoSamples);
    }
    let blocks = samples.div_ceil(BLOCK);
    let sums: Vec<BlockSums> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let count = BLOCK.min(samples - b * BLOCK);
            run_block(model, radius, seed, b, count)
        })
        .collect();

    let top = sums.iter().map(|s| s.max).fold(f64::NEG_INFINITY, f64::max);
    let n = model.rank();
    if top == f64::NEG_INFINITY {
        return Ok(VolumeEstimate { log_volume: f64::NEG_INFINITY, log_stderr: 0.0 });
    }
    let (mut s1, mut s2) = (0.0, 0.0);
    for s in &sums {
        if s.max > f64::NEG_INFINITY {
            s1 += s.s1 * (s.max - top).exp();
            s2 += s.s2 * (2.0 * (s.max - top)).exp();
        }
    }
    let count = samples as f64;
    let mean = s1 / count;
    let second = s2 / count;
    let rel_var = (second / (mean * mean) - 1.0).max(0.0);

    let ln_domain = ln_unit_ball(n) + n as f64 * radius.ln() - n as f64 * std::f64::consts::LN_2;
    Ok(VolumeEstimate {
        log_volume: top + mean.ln() + ln_domain - model.ln_cone_multiplicity(),
        log_stderr: (rel_var / count).sqrt(),
    })
}
