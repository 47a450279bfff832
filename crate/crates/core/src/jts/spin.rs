use nalgebra::DVector;
use num_complex::Complex64;

use super::{JtsError, SpectralDecomposition, TripleSystem, MERGE_TOLERANCE};

/// A point of `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinPoint(pub DVector<Complex64>);

impl SpinPoint {
    pub fn new(entries: DVector<Complex64>) -> Self {
        SpinPoint(entries)
    }

    pub fn vector(&self) -> &DVector<Complex64> {
        &self.0
    }
}

/// Type IV system (spin factor) on `C^n`:
/// `{x,y,z} = (x|y) z + (z|y) x - q(x,z) ȳ`, with `(u|v) = sum u_k v̄_k` and
/// the bilinear `q(u,v) = sum u_k v_k`.
///
/// Minimal tripotents are the isotropic vectors `q(c,c) = 0` of unit norm,
/// e.g. `(1, i, 0, ...)/√2`; a Jordan frame is `(c, μ c̄)` with `|μ| = 1`.
/// Writing `z = λ_1 c_1 + λ_2 c_2` gives `|z|^2 = λ_1^2 + λ_2^2` and
/// `|q(z,z)| = 2 λ_1 λ_2`, hence
/// `λ_±^2 = (|z|^2 ± sqrt(|z|^4 - |q|^2)) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinFactor {
    n: usize,
}

impl SpinFactor {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "spin factor dimension must be positive");
        SpinFactor { n }
    }

    fn check(&self, p: &SpinPoint) -> Result<(), JtsError> {
        if p.0.len() == self.n {
            Ok(())
        } else {
            Err(JtsError::ShapeMismatch {
                expected: format!("length {}", self.n),
                found: format!("length {}", p.0.len()),
            })
        }
    }
}

impl TripleSystem for SpinFactor {
    type Point = SpinPoint;

    fn complex_dim(&self) -> usize {
        self.n
    }

    fn rank(&self) -> usize {
        if self.n == 1 {
            1
        } else {
            2
        }
    }

    fn coords(&self, p: &SpinPoint) -> Result<DVector<Complex64>, JtsError> {
        self.check(p)?;
        Ok(p.0.clone())
    }

    fn point(&self, v: DVector<Complex64>) -> SpinPoint {
        SpinPoint(v)
    }

    fn triple_product(&self, x: &SpinPoint, y: &SpinPoint, z: &SpinPoint) -> Result<SpinPoint, JtsError> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        let (x, y, z) = (&x.0, &y.0, &z.0);
        // nalgebra: a.dotc(b) = sum conj(a_k) b_k, a.dot(b) = sum a_k b_k
        let xy = y.dotc(x);
        let zy = y.dotc(z);
        let qxz = x.dot(z);
        Ok(SpinPoint(z * xy + x * zy - y.map(|v| v.conj()) * qxz))
    }

    fn spectral_decompose(&self, z: &SpinPoint) -> Result<SpectralDecomposition<SpinPoint>, JtsError> {
        self.check(z)?;
        let v = &z.0;
        let norm2 = v.norm_squared();
        if norm2 == 0.0 {
            return Ok(SpectralDecomposition::empty());
        }
        let q = v.dot(v);
        let qa = q.norm();
        // |z|^4 - |q|^2 = 4 |Re z ∧ Im z|^2; the Lagrange identity avoids the
        // cancellation that would cost half the digits of the eigenvalue gap.
        let mut wedge2 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let w = v[i].re * v[j].im - v[j].re * v[i].im;
                wedge2 += w * w;
            }
        }
        let disc = 2.0 * wedge2.sqrt();
        let l1 = ((norm2 + disc) / 2.0).sqrt();
        let l2 = qa / (2.0 * l1);

        let single = |lambda: f64| SpectralDecomposition {
            eigenvalues: vec![lambda],
            tripotents: vec![SpinPoint(v.unscale(lambda))],
        };

        if l1 - l2 <= MERGE_TOLERANCE * (1.0 + l1) {
            // z is a multiple of a maximal tripotent, which has |e|^2 = 2
            return Ok(single((norm2 / 2.0).sqrt()));
        }
        if l2 <= l1 * f64::EPSILON {
            return Ok(single(norm2.sqrt()));
        }

        let mu = q / qa;
        let c1 = (v * Complex64::from(l1) - v.map(|x| x.conj()) * (mu * l2)).unscale(l1 * l1 - l2 * l2);
        let c2 = c1.map(|x| x.conj()) * mu;
        Ok(SpectralDecomposition { eigenvalues: vec![l1, l2], tripotents: vec![SpinPoint(c1), SpinPoint(c2)] })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn point(entries: &[Complex64]) -> SpinPoint {
        SpinPoint(DVector::from_column_slice(entries))
    }

    fn dist(sys: &SpinFactor, a: &SpinPoint, b: &SpinPoint) -> f64 {
        (sys.coords(a).unwrap() - sys.coords(b).unwrap()).norm()
    }

    #[test]
    fn isotropic_vector_is_tripotent() {
        let sys = SpinFactor::new(5);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let cc = point(&[c(s, 0.0), c(0.0, s), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let ccc = sys.triple_product(&cc, &cc, &cc).unwrap();
        assert!(dist(&sys, &ccc, &sys.combine(&[(2.0, &cc)]).unwrap()) < 1e-15);
        let dec = sys.spectral_decompose(&cc).unwrap();
        assert_eq!(dec.eigenvalues.len(), 1);
        assert!((dec.eigenvalues[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn real_vectors_have_one_eigenvalue() {
        let sys = SpinFactor::new(5);
        let z = point(&[c(0.3, 0.0), c(-0.2, 0.0), c(0.0, 0.0), c(0.6, 0.0), c(0.1, 0.0)]);
        let norm = sys.coords(&z).unwrap().norm();
        let dec = sys.spectral_decompose(&z).unwrap();
        assert_eq!(dec.len(), 1);
        assert!((dec.eigenvalues[0] - norm / 2f64.sqrt()).abs() < 1e-15);
        let e = &dec.tripotents[0];
        let eee = sys.triple_product(e, e, e).unwrap();
        assert!(dist(&sys, &eee, &sys.combine(&[(2.0, e)]).unwrap()) < 1e-14);
    }

    #[test]
    fn generic_point_has_two_terms() {
        let sys = SpinFactor::new(6);
        let z = point(&[c(0.3, 0.1), c(-0.2, 0.5), c(0.0, 0.1), c(0.25, -0.3), c(0.1, 0.0), c(0.05, 0.2)]);
        let dec = sys.spectral_decompose(&z).unwrap();
        assert_eq!(dec.len(), 2);
        assert!(dec.eigenvalues[0] > dec.eigenvalues[1]);
        let rebuilt =
            sys.combine(&[(dec.eigenvalues[0], &dec.tripotents[0]), (dec.eigenvalues[1], &dec.tripotents[1])]).unwrap();
        assert!(dist(&sys, &rebuilt, &z) < 1e-14);
        assert!(sys.operator_t(&dec.tripotents[0], &dec.tripotents[1]).unwrap().norm() < 1e-13);
    }

    #[test]
    fn trace_form_is_genus_times_standard() {
        let sys = SpinFactor::new(7);
        let u = point(&[c(0.3, 0.1), c(-0.2, 0.5), c(0.0, 0.1), c(0.25, -0.3), c(0.1, 0.0), c(0.05, 0.2), c(1.0, 0.0)]);
        let v = point(&[c(0.1, 0.1), c(0.2, -0.5), c(0.3, 0.0), c(-0.25, 0.3), c(0.0, 1.0), c(0.5, 0.1), c(0.0, 0.0)]);
        let tr = sys.trace_form(&u, &v).unwrap();
        assert!((tr - v.0.dotc(&u.0) * 7.0).norm() < 1e-13);
    }

    #[test]
    fn shape_errors() {
        let sys = SpinFactor::new(5);
        let short = point(&[c(1.0, 0.0)]);
        assert!(matches!(sys.spectral_decompose(&short), Err(JtsError::ShapeMismatch { .. })));
    }
}
