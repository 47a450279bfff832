#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use volume_entropy::jts::TripleSystem;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> DVector<Complex64> {
    DVector::from_fn(n, |_, _| gaussian(rng))
}

pub fn random_matrix(rng: &mut impl Rng, n: usize, m: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, m, |_, _| gaussian(rng))
}

/// Haar-ish unitary from the QR factorization of a Gaussian matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> DMatrix<Complex64> {
    random_matrix(rng, n, n).qr().q()
}

pub fn random_point<S: TripleSystem>(sys: &S, rng: &mut impl Rng) -> S::Point {
    sys.point(random_vector(rng, sys.complex_dim()))
}

/// Largest coordinate distance between two points.
pub fn gap<S: TripleSystem>(sys: &S, p: &S::Point, q: &S::Point) -> f64 {
    let (a, b) = (sys.coords(p).unwrap(), sys.coords(q).unwrap());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn scaled<S: TripleSystem>(sys: &S, p: &S::Point, s: f64) -> S::Point {
    sys.combine(&[(s, p)]).unwrap()
}
