//! Hermitian positive Jordan triple systems.
//!
//! Two concrete realizations are provided: rectangular complex matrices
//! ([`RectangularMatrices`], type I) and spin factors ([`SpinFactor`], type
//! IV). Both are normalized so that tripotents satisfy `{c,c,c} = 2c`; the
//! one-dimensional case `I[1,1]` then has `{x,y,z} = 2 x ȳ z` and Bergman
//! operator `B(x,y) = (1 - x ȳ)^2`.
//!
//! Operators are materialized as dense real matrices acting on the real
//! coordinates `[Re v; Im v]` of the flattened point `v ∈ C^N`, which lets
//! complex-linear (`T`, `B`) and antilinear (`Q`) maps share one
//! representation.

mod rectangular;
mod spin;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

pub use rectangular::{MatrixPoint, RectangularMatrices};
pub use spin::{SpinFactor, SpinPoint};

/// Real matrix of an R-linear map, size `2N x 2N`.
pub type RealOperator = DMatrix<f64>;

/// Eigenvalues closer than `MERGE_TOLERANCE * (1 + λ_1)` share one spectral
/// term.
pub const MERGE_TOLERANCE: f64 = 1e-9;

/// Smallest eigenvalue of `B(z,z)` that still counts as positive.
pub const POSITIVITY_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JtsError {
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },
    #[error("function is not defined at eigenvalue {0}")]
    DomainError(f64),
}

/// `z = sum_j λ_j c_j` with `λ_1 > ... > λ_s > 0` and pairwise strongly
/// orthogonal tripotents `c_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition<P> {
    pub eigenvalues: Vec<f64>,
    pub tripotents: Vec<P>,
}

impl<P> SpectralDecomposition<P> {
    pub fn empty() -> Self {
        SpectralDecomposition { eigenvalues: Vec::new(), tripotents: Vec::new() }
    }

    /// Number of terms, the rank of the decomposed point.
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// A Hermitian Jordan triple system realized on `C^N`.
///
/// Implementors supply the triple product, the flattening to coordinates and
/// the spectral decomposition; the operators and functional calculus are
/// derived from those.
pub trait TripleSystem {
    type Point: Clone + std::fmt::Debug;

    /// `N`, the complex dimension.
    fn complex_dim(&self) -> usize;

    /// Rank of the system: the length of a Jordan frame.
    fn rank(&self) -> usize;

    /// Flattens a point, checking its shape.
    fn coords(&self, p: &Self::Point) -> Result<DVector<Complex64>, JtsError>;

    /// Inverse of [`coords`](Self::coords). `v` must have length `N`.
    fn point(&self, v: DVector<Complex64>) -> Self::Point;

    /// `{x, y, z}`: bilinear and symmetric in `x, z`, antilinear in `y`.
    fn triple_product(&self, x: &Self::Point, y: &Self::Point, z: &Self::Point) -> Result<Self::Point, JtsError>;

    fn spectral_decompose(&self, z: &Self::Point) -> Result<SpectralDecomposition<Self::Point>, JtsError>;

    fn zero(&self) -> Self::Point {
        self.point(DVector::zeros(self.complex_dim()))
    }

    /// `sum_i w_i p_i` with real weights.
    fn combine(&self, terms: &[(f64, &Self::Point)]) -> Result<Self::Point, JtsError> {
        let mut acc = DVector::zeros(self.complex_dim());
        for (w, p) in terms {
            acc += self.coords(p)? * Complex64::new(*w, 0.0);
        }
        Ok(self.point(acc))
    }

    /// Matrix of an R-linear map in the real coordinates `[Re v; Im v]`.
    fn real_matrix<F>(&self, map: F) -> Result<RealOperator, JtsError>
    where
        F: Fn(&Self::Point) -> Result<Self::Point, JtsError>,
    {
        let n = self.complex_dim();
        let mut out = DMatrix::zeros(2 * n, 2 * n);
        for k in 0..n {
            for (col, unit) in [(k, Complex64::new(1.0, 0.0)), (n + k, Complex64::new(0.0, 1.0))] {
                let mut e = DVector::zeros(n);
                e[k] = unit;
                let image = self.coords(&map(&self.point(e))?)?;
                for i in 0..n {
                    out[(i, col)] = image[i].re;
                    out[(n + i, col)] = image[i].im;
                }
            }
        }
        Ok(out)
    }

    /// Applies a real-coordinate operator to a point.
    fn apply(&self, op: &RealOperator, p: &Self::Point) -> Result<Self::Point, JtsError> {
        let v = self.coords(p)?;
        let n = self.complex_dim();
        let real = DVector::from_iterator(2 * n, v.iter().map(|c| c.re).chain(v.iter().map(|c| c.im)));
        let image = op * real;
        Ok(self.point(DVector::from_fn(n, |i, _| Complex64::new(image[i], image[n + i]))))
    }

    /// `T(x, y) z = {x, y, z}`, complex-linear.
    fn operator_t(&self, x: &Self::Point, y: &Self::Point) -> Result<RealOperator, JtsError> {
        self.coords(x)?;
        self.coords(y)?;
        self.real_matrix(|z| self.triple_product(x, y, z))
    }

    /// `Q(x) y = ½ {x, y, x}`, antilinear.
    fn operator_q(&self, x: &Self::Point) -> Result<RealOperator, JtsError> {
        self.coords(x)?;
        self.real_matrix(|y| {
            let t = self.triple_product(x, y, x)?;
            self.combine(&[(0.5, &t)])
        })
    }

    /// Bergman operator `B(x, y) = id - T(x, y) + Q(x) Q(y)`.
    fn operator_b(&self, x: &Self::Point, y: &Self::Point) -> Result<RealOperator, JtsError> {
        let t = self.operator_t(x, y)?;
        let qq = self.operator_q(x)? * self.operator_q(y)?;
        Ok(DMatrix::identity(t.nrows(), t.ncols()) - t + qq)
    }

    /// Hermitian form `(u | v) = tr T(u, v)`, the complex trace.
    fn trace_form(&self, u: &Self::Point, v: &Self::Point) -> Result<Complex64, JtsError> {
        Ok(complex_trace(&self.operator_t(u, v)?))
    }

    /// `z^(2p+1)`, with `z^(1) = z` and `z^(2p+1) = Q(z) z^(2p-1)`.
    fn odd_power(&self, z: &Self::Point, p: u32) -> Result<Self::Point, JtsError> {
        let mut acc = z.clone();
        self.coords(z)?;
        for _ in 0..p {
            let t = self.triple_product(z, &acc, z)?;
            acc = self.combine(&[(0.5, &t)])?;
        }
        Ok(acc)
    }

    /// `F(z) = sum_j f(λ_j) c_j` for an odd function `f`; a non-finite value
    /// of `f` at an eigenvalue is a [`JtsError::DomainError`].
    fn functional_calculus<F>(&self, f: F, z: &Self::Point) -> Result<Self::Point, JtsError>
    where
        F: Fn(f64) -> f64,
    {
        let dec = self.spectral_decompose(z)?;
        let mut terms = Vec::with_capacity(dec.len());
        for (&l, c) in dec.eigenvalues.iter().zip(&dec.tripotents) {
            let v = f(l);
            if !v.is_finite() {
                return Err(JtsError::DomainError(l));
            }
            terms.push((v, c));
        }
        self.combine(&terms)
    }

    /// Largest eigenvalue, `0` at the origin.
    fn spectral_norm(&self, z: &Self::Point) -> Result<f64, JtsError> {
        Ok(self.spectral_decompose(z)?.eigenvalues.first().copied().unwrap_or(0.0))
    }

    /// Membership in the domain, the open unit ball of the spectral norm.
    fn is_in_domain(&self, z: &Self::Point) -> Result<bool, JtsError> {
        Ok(self.spectral_norm(z)? < 1.0)
    }

    /// Smallest eigenvalue of `B(z, z)`, which is self-adjoint for the trace
    /// form.
    fn bergman_min_eigenvalue(&self, z: &Self::Point) -> Result<f64, JtsError> {
        let b = self.operator_b(z, z)?;
        let sym = (&b + b.transpose()) * 0.5;
        Ok(sym.symmetric_eigenvalues().min())
    }

    /// Positive definiteness of `B(z, z)`, the original definition of the
    /// domain.
    fn bergman_positive_definite(&self, z: &Self::Point) -> Result<bool, JtsError> {
        Ok(self.bergman_min_eigenvalue(z)? > POSITIVITY_THRESHOLD)
    }
}

/// Complex trace of a complex-linear operator in real coordinates.
pub fn complex_trace(op: &RealOperator) -> Complex64 {
    let n = op.nrows() / 2;
    let mut tr = Complex64::new(0.0, 0.0);
    for i in 0..n {
        tr += Complex64::new(op[(i, i)], op[(n + i, i)]);
    }
    tr
}

/// Groups descending positive values into clusters whose consecutive gaps are
/// within the merge tolerance. Returns index ranges into `sorted`.
pub(crate) fn merge_clusters(sorted: &[f64]) -> Vec<std::ops::Range<usize>> {
    let Some(&top) = sorted.first() else {
        return Vec::new();
    };
    let tol = MERGE_TOLERANCE * (1.0 + top);
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..sorted.len() {
        if sorted[i - 1] - sorted[i] > tol {
            out.push(start..i);
            start = i;
        }
    }
    out.push(start..sorted.len());
    out
}
