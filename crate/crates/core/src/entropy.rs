//! Closed-form volume entropy.
//!
//! For an irreducible domain the growth exponent in a unit direction `x` of the
//! radial cone is linear with weights `2 (b + 1 + a (r - j))`, and the entropy
//! is the maximum of that linear form over the unit sphere, i.e. the Euclidean
//! norm of the weight vector. Products concatenate the weight vectors.
//!
//! Comparisons between domains go through [`EntropyResult::squared_quarter`],
//! the exact integer `Ent^2 / 4`, never through the floating value.

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{DomainSpec, ProductSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EntropyError {
    #[error("direction has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyResult {
    /// Volume entropy of the hyperbolic metric.
    pub value: f64,
    /// `Ent^2 / 4`, exact.
    pub squared_quarter: u64,
    /// Unit direction attaining the maximal growth exponent, descending within
    /// each factor block.
    pub optimizer: Vec<f64>,
}

/// The integer weights `b + 1 + a (r - j)` for `j = 1..=r`, strictly
/// decreasing when `a > 0`.
pub fn exponent_weights(domain: &DomainSpec) -> Vec<u64> {
    let (r, a, b) = (u64::from(domain.r()), u64::from(domain.a()), u64::from(domain.b()));
    (1..=r).map(|j| b + 1 + a * (r - j)).collect()
}

fn from_weights(weights: &[u64]) -> EntropyResult {
    let squared_quarter: u64 = weights.iter().map(|w| w * w).sum();
    let norm = (squared_quarter as f64).sqrt();
    EntropyResult { value: 2.0 * norm, squared_quarter, optimizer: weights.iter().map(|&w| w as f64 / norm).collect() }
}

/// Entropy of an irreducible domain with its hyperbolic metric.
pub fn entropy_hyperbolic(domain: &DomainSpec) -> EntropyResult {
    from_weights(&exponent_weights(domain))
}

/// Entropy of a product: the squared entropies of the factors add.
pub fn entropy_product(product: &ProductSpec) -> EntropyResult {
    let weights: Vec<u64> = product.factors().iter().flat_map(exponent_weights).collect();
    from_weights(&weights)
}

/// Entropy with respect to the Bergman metric `g_B = γ g_hyp`. Distances scale
/// by `sqrt(γ)`, so the entropy scales by `1 / sqrt(γ)`.
pub fn entropy_bergman(domain: &DomainSpec) -> f64 {
    entropy_hyperbolic(domain).value / (domain.genus() as f64).sqrt()
}

/// Growth exponent of the volume density along `x`:
/// `sum_j 2 (b + 1 + a (r - j)) |x|_(j)` with `|x|_(1) >= ... >= |x|_(r)`.
///
/// Sorting the absolute values extends the exponent from the open cone
/// `x_1 > ... > x_r > 0` to all of `R^r` continuously.
pub fn directional_exponent(x: &[f64], domain: &DomainSpec) -> Result<f64, EntropyError> {
    let weights = exponent_weights(domain);
    if x.len() != weights.len() {
        return Err(EntropyError::LengthMismatch { expected: weights.len(), got: x.len() });
    }
    Ok(weighted_sorted_abs(x, &weights))
}

/// [`directional_exponent`] for a product, `x` being the concatenation of
/// per-factor blocks.
pub fn directional_exponent_product(x: &[f64], product: &ProductSpec) -> Result<f64, EntropyError> {
    let expected = product.rank() as usize;
    if x.len() != expected {
        return Err(EntropyError::LengthMismatch { expected, got: x.len() });
    }
    let mut offset = 0;
    let mut total = 0.0;
    for factor in product.factors() {
        let weights = exponent_weights(factor);
        total += weighted_sorted_abs(&x[offset..offset + weights.len()], &weights);
        offset += weights.len();
    }
    Ok(total)
}

fn weighted_sorted_abs(x: &[f64], weights: &[u64]) -> f64 {
    let mut abs: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    abs.sort_by(|p, q| q.total_cmp(p));
    abs.iter().zip(weights).map(|(v, &w)| 2.0 * w as f64 * v).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_domain, DomainKind};

    fn dom(kind: DomainKind) -> DomainSpec {
        make_domain(kind).unwrap()
    }

    #[test]
    fn disc() {
        let e = entropy_hyperbolic(&dom(DomainKind::TypeI { n: 1, m: 1 }));
        assert_eq!(e.value, 2.0);
        assert_eq!(e.squared_quarter, 1);
        assert_eq!(e.optimizer, vec![1.0]);
    }

    #[test]
    fn collision_pair() {
        let a = entropy_hyperbolic(&dom(DomainKind::TypeI { n: 2, m: 12 }));
        let b = entropy_hyperbolic(&dom(DomainKind::TypeIV { n: 18 }));
        assert_eq!(a.squared_quarter, 290);
        assert_eq!(b.squared_quarter, 290);
        assert_eq!(a.value, 2.0 * 290f64.sqrt());
        assert_eq!(a.value, b.value);
        assert_ne!(a.optimizer, b.optimizer);
    }

    #[test]
    fn exceptional_six() {
        // weights 17, 9, 1
        let e = entropy_hyperbolic(&dom(DomainKind::TypeVI));
        assert_eq!(e.squared_quarter, 17 * 17 + 9 * 9 + 1);
        assert_eq!(e.squared_quarter, 371);
        let norm: f64 = e.optimizer.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
        assert!(e.optimizer.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn products() {
        let disc = dom(DomainKind::TypeI { n: 1, m: 1 });
        let bidisc = ProductSpec::new(vec![disc, disc]).unwrap();
        let e = entropy_product(&bidisc);
        assert_eq!(e.squared_quarter, 2);
        assert!((e.value - 8f64.sqrt()).abs() < 1e-15);

        let single = entropy_product(&ProductSpec::from(dom(DomainKind::TypeVI)));
        assert_eq!(single, entropy_hyperbolic(&dom(DomainKind::TypeVI)));

        let a = dom(DomainKind::TypeI { n: 2, m: 12 });
        let b = dom(DomainKind::TypeIV { n: 18 });
        let ab = entropy_product(&ProductSpec::new(vec![a, b]).unwrap());
        let ba = entropy_product(&ProductSpec::new(vec![b, a]).unwrap());
        assert_eq!(ab.squared_quarter, 580);
        assert_eq!(ab.squared_quarter, ba.squared_quarter);
        let pythagoras = (entropy_hyperbolic(&a).value.powi(2) + entropy_hyperbolic(&b).value.powi(2)).sqrt();
        assert!((ab.value - pythagoras).abs() < 1e-12);
    }

    #[test]
    fn bergman() {
        let disc = dom(DomainKind::TypeI { n: 1, m: 1 });
        assert!((entropy_bergman(&disc) - 2f64.sqrt()).abs() < 1e-15);
        let six = dom(DomainKind::TypeVI);
        assert!((entropy_bergman(&six) - 2.0 * 371f64.sqrt() / 18f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn exponent_examples() {
        let disc = dom(DomainKind::Custom { r: 1, a: 7, b: 3 });
        assert_eq!(directional_exponent(&[1.0], &disc).unwrap(), 8.0);
        let iii2 = dom(DomainKind::TypeIII { n: 2 });
        // sorted (4/5, 3/5): 2 * 2 * 4/5 + 2 * 1 * 3/5 = 22/5
        let e = directional_exponent(&[0.6, -0.8], &iii2).unwrap();
        assert!((e - 22.0 / 5.0).abs() < 1e-15);
        assert_eq!(directional_exponent(&[1.0], &iii2), Err(EntropyError::LengthMismatch { expected: 2, got: 1 }));
        let opt = entropy_hyperbolic(&iii2);
        assert!((directional_exponent(&opt.optimizer, &iii2).unwrap() - opt.value).abs() < 1e-12);
    }
}
