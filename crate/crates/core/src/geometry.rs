//! Metric geometry in polar coordinates.
//!
//! A regular point of the domain is `sum_j λ_j c_j` with a Jordan frame
//! `(c_1, ..., c_r)` and `1 > λ_1 > ... > λ_r > 0`. Everything entropy needs
//! (exponential map, distance to the origin, symplectic duality, volume
//! density) depends on the eigenvalues only, so this module never represents
//! frames. The frame volume `∫ Θ` is a multiplicative constant that drops out
//! of every growth rate.

use thiserror::Error;

use crate::catalog::DomainSpec;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("eigenvalues must be nonnegative, found {0}")]
    Negative(f64),
    #[error("eigenvalues must be weakly decreasing: {0} precedes {1}")]
    NotDecreasing(f64, f64),
    #[error("eigenvalue {0} is not finite")]
    NotFinite(f64),
    #[error("eigenvalue {0} lies outside the unit ball")]
    OutsideDomain(f64),
}

/// Radial part `λ_1 >= ... >= λ_s >= 0` of a point in polar coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueVector(Vec<f64>);

impl EigenvalueVector {
    pub fn new(values: Vec<f64>) -> Result<Self, GeometryError> {
        for &v in &values {
            if !v.is_finite() {
                return Err(GeometryError::NotFinite(v));
            }
            if v < 0.0 {
                return Err(GeometryError::Negative(v));
            }
        }
        if let Some(w) = values.windows(2).find(|w| w[0] < w[1]) {
            return Err(GeometryError::NotDecreasing(w[0], w[1]));
        }
        Ok(EigenvalueVector(values))
    }

    /// Sorts `values` descending after taking absolute values.
    pub fn from_unsorted(values: &[f64]) -> Result<Self, GeometryError> {
        let mut v: Vec<f64> = values.iter().map(|x| x.abs()).collect();
        v.sort_by(|p, q| q.total_cmp(p));
        Self::new(v)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Rank `rank`, strictly decreasing, last entry positive.
    pub fn is_regular(&self, rank: usize) -> bool {
        self.0.len() == rank && self.0.windows(2).all(|w| w[0] > w[1]) && self.0.last().is_some_and(|&v| v > 0.0)
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        EigenvalueVector(self.0.iter().map(|&v| f(v)).collect())
    }
}

/// Invariants entering the volume density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RadialDensityParams {
    pub r: u32,
    pub a: u32,
    pub b: u32,
}

impl From<&DomainSpec> for RadialDensityParams {
    fn from(d: &DomainSpec) -> Self {
        RadialDensityParams { r: d.r(), a: d.a(), b: d.b() }
    }
}

impl From<DomainSpec> for RadialDensityParams {
    fn from(d: DomainSpec) -> Self {
        (&d).into()
    }
}

/// `exp_0` restricted to a maximal polydisc: `λ_j -> tanh λ_j`.
pub fn exp_origin(t: &EigenvalueVector) -> EigenvalueVector {
    t.map(f64::tanh)
}

/// Hyperbolic distance from the origin, `sqrt(sum_j artanh^2 λ_j)`.
pub fn dist_origin(lambda: &EigenvalueVector) -> Result<f64, GeometryError> {
    let mut sum = 0.0;
    for &l in lambda.values() {
        if l >= 1.0 {
            return Err(GeometryError::OutsideDomain(l));
        }
        sum += l.atanh().powi(2);
    }
    Ok(sum.sqrt())
}

/// Symplectic duality map `t -> t / sqrt(t^2 + 1)`, a diffeomorphism of the
/// whole space onto the domain.
pub fn duality_map(t: &EigenvalueVector) -> EigenvalueVector {
    t.map(|v| v / v.hypot(1.0))
}

/// Distance from the origin of the dual image: `sqrt(sum_j asinh^2 t_j)`.
pub fn dual_distance(t: &EigenvalueVector) -> f64 {
    t.values().iter().map(|v| v.asinh().powi(2)).sum::<f64>().sqrt()
}

/// Radial factor of the flat volume form,
/// `prod_j λ_j^(2b+1) * prod_{j<k} (λ_j^2 - λ_k^2)^a`.
pub fn radial_density(lambda: &EigenvalueVector, p: &RadialDensityParams) -> f64 {
    let l = lambda.values();
    let mut out: f64 = l.iter().map(|v| v.powi(2 * p.b as i32 + 1)).product();
    if p.a > 0 {
        for j in 0..l.len() {
            for k in j + 1..l.len() {
                out *= (l[j] * l[j] - l[k] * l[k]).powi(p.a as i32);
            }
        }
    }
    out
}

/// The density after substituting `λ_j = sinh t_j`:
/// `prod sinh^(2b+1) t_j * prod_{j<k} (sinh^2 t_j - sinh^2 t_k)^a * prod cosh t_j`.
pub fn radial_density_t(t: &EigenvalueVector, p: &RadialDensityParams) -> f64 {
    log_radial_density_t(t.values(), p).exp()
}

/// Natural log of [`radial_density_t`] for a weakly decreasing, nonnegative
/// slice. Finite up to very large `t` where the density itself overflows;
/// `-inf` wherever the density vanishes.
///
/// The Vandermonde factors use `sinh^2 x - sinh^2 y = sinh(x - y) sinh(x + y)`.
pub fn log_radial_density_t(t: &[f64], p: &RadialDensityParams) -> f64 {
    let odd = f64::from(2 * p.b + 1);
    let mut out = 0.0;
    for &v in t {
        out += odd * ln_sinh(v) + ln_cosh(v);
    }
    if p.a > 0 {
        let a = f64::from(p.a);
        for j in 0..t.len() {
            for k in j + 1..t.len() {
                out += a * (ln_sinh(t[j] - t[k]) + ln_sinh(t[j] + t[k]));
            }
        }
    }
    out
}

pub(crate) fn ln_sinh(t: f64) -> f64 {
    if t < 1.0 {
        t.sinh().ln()
    } else {
        t + (-(-2.0 * t).exp()).ln_1p() - std::f64::consts::LN_2
    }
}

pub(crate) fn ln_cosh(t: f64) -> f64 {
    let t = t.abs();
    t + (-2.0 * t).exp().ln_1p() - std::f64::consts::LN_2
}
