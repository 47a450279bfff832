//! Independent numerical checks of the closed forms.
//!
//! * [`maximize_exponent`] maximizes the directional growth exponent over the
//!   unit sphere by projected ascent, without using the closed-form maximizer.
//! * [`ball_volume`] integrates the radial volume density over the geodesic
//!   ball `{|t| <= T}` in the radial cone, by tensor Gauss-Legendre quadrature
//!   (total rank up to 3) or seeded Monte Carlo (any rank). Volumes are
//!   normalized by the frame volume, which only shifts `log V` by a constant.
//! * [`growth_entropy`] fits the slope of `log V(T)`, the volume growth rate.
//! * [`scan_collisions`] groups catalog domains with equal entropy.
//!
//! All accumulation of the exponentially large integrands happens in log
//! space.

mod collisions;
mod exponent;
mod growth;
mod montecarlo;
mod quadrature;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::ProductSpec;
use crate::geometry::{log_radial_density_t, RadialDensityParams};

pub use collisions::{scan_collisions, CollisionGroup, CollisionReport};
pub use exponent::{maximize_exponent, ExponentMaximum, DEFAULT_RESTARTS};
pub use growth::{ball_volume, default_fit_window, growth_entropy, log_ball_volume, GrowthEstimate, VolumeEstimate};
pub use quadrature::{QuadratureOptions, MAX_QUADRATURE_RANK};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("quadrature supports total rank up to {max}, got {rank}")]
    UnsupportedRank { rank: usize, max: usize },
    #[error("ball radius must be positive and finite, got {0}")]
    NonPositiveRadius(f64),
    #[error("radii must be strictly increasing")]
    RadiiNotIncreasing,
    #[error("fit window of {window} points is invalid for {len} radii (need at least 4)")]
    FitWindow { window: usize, len: usize },
    #[error("fit window has fewer than 2 distinct radii")]
    FitDegenerate,
    #[error("Monte Carlo needs at least one sample")]
    NoSamples,
}

/// How [`ball_volume`] integrates the density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IntegrationMethod {
    Quadrature,
    MonteCarlo { samples: u64, seed: u64 },
}

/// Radial volume density of a (possibly reducible) domain: one block of
/// eigenvalue coordinates per irreducible factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RadialModel {
    blocks: Vec<RadialDensityParams>,
}

impl RadialModel {
    pub(crate) fn new(product: &ProductSpec) -> Self {
        RadialModel { blocks: product.factors().iter().map(RadialDensityParams::from).collect() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.blocks.iter().map(|p| p.r as usize).sum()
    }

    pub(crate) fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|p| p.r as usize).collect()
    }

    /// `ln` of the density; every block of `t` must be weakly decreasing.
    pub(crate) fn log_density(&self, t: &[f64]) -> f64 {
        let mut offset = 0;
        let mut out = 0.0;
        for p in &self.blocks {
            let r = p.r as usize;
            out += log_radial_density_t(&t[offset..offset + r], p);
            offset += r;
        }
        out
    }

    /// Sorts each block of `t` descending in place, then evaluates
    /// [`log_density`](Self::log_density). This is the density extended
    /// symmetrically to the whole positive orthant.
    pub(crate) fn log_density_symmetrized(&self, t: &mut [f64]) -> f64 {
        let mut offset = 0;
        for p in &self.blocks {
            let r = p.r as usize;
            t[offset..offset + r].sort_unstable_by(|x, y| y.total_cmp(x));
            offset += r;
        }
        self.log_density(t)
    }

    /// `ln prod_k r_k!`, the number of orderings folded onto the radial cone.
    pub(crate) fn ln_cone_multiplicity(&self) -> f64 {
        self.blocks.iter().flat_map(|p| 1..=p.r).map(|k| f64::from(k).ln()).sum()
    }
}

/// Streaming `ln sum exp` with a running maximum.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogSumExp {
    max: f64,
    sum: f64,
}

impl LogSumExp {
    pub(crate) fn new() -> Self {
        LogSumExp { max: f64::NEG_INFINITY, sum: 0.0 }
    }

    pub(crate) fn push(&mut self, v: f64) {
        if v == f64::NEG_INFINITY {
            return;
        }
        if v <= self.max {
            self.sum += (v - self.max).exp();
        } else {
            self.sum = self.sum * (self.max - v).exp() + 1.0;
            self.max = v;
        }
    }

    pub(crate) fn merge(&mut self, other: &LogSumExp) {
        if other.max == f64::NEG_INFINITY {
            return;
        }
        if other.max <= self.max {
            self.sum += other.sum * (other.max - self.max).exp();
        } else {
            self.sum = self.sum * (self.max - other.max).exp() + other.sum;
            self.max = other.max;
        }
    }

    pub(crate) fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.sum.ln()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_sum_exp_matches_direct_sum() {
        let values = [-3.0, 0.5, 2.0, -1.0, 1.5];
        let mut acc = LogSumExp::new();
        values.iter().for_each(|&v| acc.push(v));
        let direct: f64 = values.iter().map(|v| v.exp()).sum::<f64>().ln();
        assert!((acc.value() - direct).abs() < 1e-14);

        let (mut left, mut right) = (LogSumExp::new(), LogSumExp::new());
        values[..2].iter().for_each(|&v| left.push(v));
        values[2..].iter().for_each(|&v| right.push(v));
        left.merge(&right);
        assert!((left.value() - direct).abs() < 1e-14);

        let mut huge = LogSumExp::new();
        huge.push(1000.0);
        huge.push(1000.0);
        assert!((huge.value() - (1000.0 + 2f64.ln())).abs() < 1e-12);
        assert_eq!(LogSumExp::new().value(), f64::NEG_INFINITY);
        huge.push(f64::NEG_INFINITY);
        assert!(huge.value().is_finite());
    }
}
