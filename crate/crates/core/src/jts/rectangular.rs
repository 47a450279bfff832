use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{merge_clusters, JtsError, SpectralDecomposition, TripleSystem};

/// A point of `C^{n x m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPoint(pub DMatrix<Complex64>);

impl MatrixPoint {
    pub fn new(entries: DMatrix<Complex64>) -> Self {
        MatrixPoint(entries)
    }

    /// Matrix unit `E_{ij}`.
    pub fn unit(n: usize, m: usize, i: usize, j: usize) -> Self {
        let mut e = DMatrix::zeros(n, m);
        e[(i, j)] = Complex64::new(1.0, 0.0);
        MatrixPoint(e)
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }
}

/// Type I system on `n x m` complex matrices, `{x,y,z} = x y* z + z y* x`.
///
/// Tripotents are the partial isometries, the eigenvalues of a point are its
/// distinct nonzero singular values and the rank is `min(n, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RectangularMatrices {
    n: usize,
    m: usize,
}

impl RectangularMatrices {
    pub fn new(n: usize, m: usize) -> Self {
        assert!(n > 0 && m > 0, "matrix shape must be positive");
        RectangularMatrices { n, m }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    fn check(&self, p: &MatrixPoint) -> Result<(), JtsError> {
        if p.0.shape() == (self.n, self.m) {
            Ok(())
        } else {
            Err(JtsError::ShapeMismatch {
                expected: format!("{}x{}", self.n, self.m),
                found: format!("{}x{}", p.0.nrows(), p.0.ncols()),
            })
        }
    }
}

impl TripleSystem for RectangularMatrices {
    type Point = MatrixPoint;

    fn complex_dim(&self) -> usize {
        self.n * self.m
    }

    fn rank(&self) -> usize {
        self.n.min(self.m)
    }

    fn coords(&self, p: &MatrixPoint) -> Result<DVector<Complex64>, JtsError> {
        self.check(p)?;
        Ok(DVector::from_column_slice(p.0.as_slice()))
    }

    fn point(&self, v: DVector<Complex64>) -> MatrixPoint {
        MatrixPoint(DMatrix::from_column_slice(self.n, self.m, v.as_slice()))
    }

    fn triple_product(&self, x: &MatrixPoint, y: &MatrixPoint, z: &MatrixPoint) -> Result<MatrixPoint, JtsError> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        let ys = y.0.adjoint();
        Ok(MatrixPoint(&x.0 * &ys * &z.0 + &z.0 * &ys * &x.0))
    }

    fn spectral_decompose(&self, z: &MatrixPoint) -> Result<SpectralDecomposition<MatrixPoint>, JtsError> {
        self.check(z)?;
        let svd = z.0.clone().svd(true, true);
        let (u, v_t) = (svd.u.expect("requested U"), svd.v_t.expect("requested V*"));

        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
        let top = order.first().map_or(0.0, |&i| svd.singular_values[i]);
        let zero_tol = top * f64::EPSILON * 64.0 * self.n.max(self.m) as f64;
        order.retain(|&i| svd.singular_values[i] > zero_tol);
        if order.is_empty() {
            return Ok(SpectralDecomposition::empty());
        }

        let sorted: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
        let mut dec = SpectralDecomposition::empty();
        for range in merge_clusters(&sorted) {
            let mut c = DMatrix::zeros(self.n, self.m);
            for &i in &order[range.clone()] {
                c += u.column(i) * v_t.row(i);
            }
            let mean = sorted[range.clone()].iter().sum::<f64>() / range.len() as f64;
            dec.eigenvalues.push(mean);
            dec.tripotents.push(MatrixPoint(c));
        }
        Ok(dec)
    }
}
