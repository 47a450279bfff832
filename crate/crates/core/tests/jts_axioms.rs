mod common;

use common::{gap, random_matrix, random_point, random_unitary, rng, scaled};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use volume_entropy::jts::{MatrixPoint, RectangularMatrices, SpinFactor, TripleSystem};

fn jordan_defect<S: TripleSystem>(sys: &S, seed: u64) -> f64 {
    let mut g = rng(seed);
    let [x, y, u, v, w] = std::array::from_fn(|_| random_point(sys, &mut g));
    let tp = |a: &S::Point, b: &S::Point, c: &S::Point| sys.triple_product(a, b, c).unwrap();
    let lhs = tp(&x, &y, &tp(&u, &v, &w));
    let rhs = sys
        .combine(&[
            (1.0, &tp(&tp(&x, &y, &u), &v, &w)),
            (-1.0, &tp(&u, &tp(&y, &x, &v), &w)),
            (1.0, &tp(&u, &v, &tp(&x, &y, &w))),
        ])
        .unwrap();
    let scale = sys.coords(&lhs).unwrap().norm().max(1.0);
    gap(sys, &lhs, &rhs) / scale
}

/// Largest violation of reconstruction, tripotency and strong orthogonality.
fn decomposition_defect<S: TripleSystem>(sys: &S, z: &S::Point) -> f64 {
    let dec = sys.spectral_decompose(z).unwrap();
    let mut worst: f64 = 0.0;
    assert!(dec.eigenvalues.windows(2).all(|w| w[0] > w[1]), "{:?}", dec.eigenvalues);
    assert!(dec.eigenvalues.iter().all(|&l| l > 0.0));
    assert!(dec.len() <= sys.rank());
    let terms: Vec<(f64, &S::Point)> = dec.eigenvalues.iter().copied().zip(&dec.tripotents).collect();
    worst = worst.max(gap(sys, &sys.combine(&terms).unwrap(), z));
    for (i, c) in dec.tripotents.iter().enumerate() {
        let ccc = sys.triple_product(c, c, c).unwrap();
        worst = worst.max(gap(sys, &ccc, &scaled(sys, c, 2.0)));
        for d in &dec.tripotents[i + 1..] {
            worst = worst.max(sys.operator_t(c, d).unwrap().amax());
            worst = worst.max(sys.operator_t(d, c).unwrap().amax());
        }
    }
    worst
}

/// The domain is the component of `{B(z,z) > 0}` containing the origin.
/// Inside, `B(z,z)` is positive definite. Outside, the segment from `0` to
/// `z` meets a point where `B` degenerates, at `z / |z|`. When some
/// eigenvalue stays below 1 outside, `B(z,z)` itself is indefinite.
fn membership_case<S: TripleSystem>(sys: &S, g: &mut impl rand::Rng, radius: f64, always_indefinite_outside: bool) {
    let z = random_point(sys, g);
    let z = scaled(sys, &z, radius / sys.spectral_norm(&z).unwrap());
    if (radius - 1.0).abs() < 1e-6 {
        return;
    }
    let inside = sys.is_in_domain(&z).unwrap();
    assert_eq!(inside, radius < 1.0);
    if inside {
        assert!(sys.bergman_positive_definite(&z).unwrap());
    } else {
        let edge = scaled(sys, &z, 1.0 / radius);
        assert!(sys.bergman_min_eigenvalue(&edge).unwrap().abs() < 1e-9);
        let eig = sys.spectral_decompose(&z).unwrap().eigenvalues;
        if always_indefinite_outside || eig.len() < sys.rank() || eig.iter().any(|&l| l < 1.0) {
            assert!(!sys.bergman_positive_definite(&z).unwrap());
        }
    }
}

fn gram_min_eigenvalue<S: TripleSystem>(sys: &S) -> f64 {
    let n = sys.complex_dim();
    let basis: Vec<S::Point> = (0..n)
        .map(|k| {
            let mut e = nalgebra::DVector::zeros(n);
            e[k] = Complex64::new(1.0, 0.0);
            sys.point(e)
        })
        .collect();
    let gram = DMatrix::from_fn(n, n, |i, j| sys.trace_form(&basis[i], &basis[j]).unwrap());
    assert!((&gram - gram.adjoint()).camax() < 1e-12);
    gram.symmetric_eigenvalues().min()
}

#[test]
fn trace_form_is_positive_definite() {
    for n in 1..=3 {
        for m in n..=4 {
            let sys = RectangularMatrices::new(n, m);
            let min = gram_min_eigenvalue(&sys);
            assert!((min - (n + m) as f64).abs() < 1e-12, "I({n},{m}): {min}");
        }
    }
    for n in 1..=8 {
        let min = gram_min_eigenvalue(&SpinFactor::new(n));
        let genus = n as f64;
        assert!((min - genus).abs() < 1e-12, "IV({n}): {min}");
    }
}

#[test]
fn regular_points_yield_full_frames() {
    let mut g = rng(11);
    for (n, m) in [(1, 1), (2, 3), (3, 3), (3, 5), (4, 4)] {
        let sys = RectangularMatrices::new(n, m);
        for _ in 0..25 {
            let z = MatrixPoint(random_matrix(&mut g, n, m));
            let dec = sys.spectral_decompose(&z).unwrap();
            assert_eq!(dec.len(), n);
            assert!(decomposition_defect(&sys, &z) < 1e-10);
        }
    }
}

#[test]
fn spin_decomposition_edge_cases() {
    let sys = SpinFactor::new(4);
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let cases = [
        vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)],
        vec![c(0.3, 0.0), c(-0.2, 0.0), c(0.7, 0.0), c(0.1, 0.0)],
        vec![c(0.0, 0.3), c(0.0, -0.2), c(0.0, 0.7), c(0.0, 0.1)],
        vec![c(1e-9, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
    ];
    for v in cases {
        let z = sys.point(nalgebra::DVector::from_vec(v));
        assert!(decomposition_defect(&sys, &z) < 1e-10);
    }
    assert!(sys.spectral_decompose(&sys.zero()).unwrap().is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn jordan_identity_matrices(seed in any::<u64>(), n in 1usize..=3, extra in 0usize..=2) {
        let sys = RectangularMatrices::new(n, n + extra);
        prop_assert!(jordan_defect(&sys, seed) < 1e-10);
    }

    #[test]
    fn jordan_identity_spin(seed in any::<u64>(), n in 1usize..=8) {
        prop_assert!(jordan_defect(&SpinFactor::new(n), seed) < 1e-10);
    }

    #[test]
    fn bergman_operator_matches_matrix_formula(seed in any::<u64>(), n in 1usize..=3, extra in 0usize..=2) {
        let m = n + extra;
        let sys = RectangularMatrices::new(n, m);
        let mut g = rng(seed);
        let [x, y, w] = std::array::from_fn(|_| MatrixPoint(random_matrix(&mut g, n, m) * Complex64::new(0.4, 0.0)));
        let b = sys.operator_b(&x, &y).unwrap();
        let got = sys.apply(&b, &w).unwrap();
        let ys = y.0.adjoint();
        let expected = MatrixPoint(
            (DMatrix::identity(n, n) - &x.0 * &ys) * &w.0 * (DMatrix::identity(m, m) - &ys * &x.0),
        );
        prop_assert!(gap(&sys, &got, &expected) < 1e-10);
    }

    #[test]
    fn matrix_decompositions_hold(seed in any::<u64>(), n in 1usize..=4, extra in 0usize..=2) {
        let sys = RectangularMatrices::new(n, n + extra);
        let z = random_point(&sys, &mut rng(seed));
        prop_assert!(decomposition_defect(&sys, &z) < 1e-10);
    }

    #[test]
    fn spin_decompositions_hold(seed in any::<u64>(), n in 1usize..=9) {
        let sys = SpinFactor::new(n);
        let z = random_point(&sys, &mut rng(seed));
        prop_assert!(decomposition_defect(&sys, &z) < 1e-10);
    }

    #[test]
    fn svd_of_known_factorization(seed in any::<u64>(), n in 1usize..=4, extra in 0usize..=2) {
        let m = n + extra;
        let mut g = rng(seed);
        let (u, v) = (random_unitary(&mut g, n), random_unitary(&mut g, m));
        let values: Vec<f64> = (0..n).map(|k| 2.0 - 0.4 * k as f64).collect();
        let mut d = DMatrix::zeros(n, m);
        for (k, &s) in values.iter().enumerate() {
            d[(k, k)] = Complex64::new(s, 0.0);
        }
        let sys = RectangularMatrices::new(n, m);
        let dec = sys.spectral_decompose(&MatrixPoint(&u * d * v.adjoint())).unwrap();
        prop_assert_eq!(dec.len(), n);
        for (got, want) in dec.eigenvalues.iter().zip(&values) {
            prop_assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn membership_matches_bergman_positivity(seed in any::<u64>(), radius in 0.01f64..2.0, kind in 0usize..3) {
        let mut g = rng(seed);
        match kind {
            0 => membership_case(&RectangularMatrices::new(2, 3), &mut g, radius, true),
            1 => membership_case(&RectangularMatrices::new(1, 1), &mut g, radius, false),
            _ => membership_case(&SpinFactor::new(5), &mut g, radius, false),
        }
    }
}
