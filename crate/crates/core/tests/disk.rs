mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use steklov::disk::{assemble, converged_eigenvalues, deficit, mobius_pullback, normalize_center, BoundaryWeight};

fn trig_weight(terms: &[(usize, f64, f64)], m: usize) -> BoundaryWeight {
    BoundaryWeight::from_fn(m, |t| {
        1.0 + terms.iter().map(|&(n, a, b)| a * (n as f64 * t).cos() + b * (n as f64 * t).sin()).sum::<f64>()
    })
    .unwrap()
}

#[test]
fn galerkin_matches_jacobi_oracle() {
    let w = trig_weight(&[(1, 0.2, -0.1), (2, 0.15, 0.1), (3, -0.05, 0.2)], 256);
    for n in [3, 6, 10] {
        let sys = assemble(&w, n).unwrap();
        let oracle = common::pencil_oracle(&common::dense(&sys.energy_dense()), &common::dense(&sys.mass_dense()));
        let ours = sys.eigenvalues(2 * n).unwrap();
        for (a, b) in ours.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-10 * b.abs().max(1.0), "n = {n}: {a} vs {b}");
        }
    }
}

#[test]
fn periodic_weight_blocks_match_oracle() {
    // Θ with only multiples of 4 splits into residue classes mod 4
    let w = trig_weight(&[(4, 0.3, 0.1), (8, -0.1, 0.05)], 256);
    let sys = assemble(&w, 9).unwrap();
    let oracle = common::pencil_oracle(&common::dense(&sys.energy_dense()), &common::dense(&sys.mass_dense()));
    let ours = sys.eigenvalues(18).unwrap();
    for (a, b) in ours.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-10 * b.abs().max(1.0));
    }
}

#[test]
fn disk_and_constant_weights() {
    let sigma = assemble(&BoundaryWeight::constant(1.0, 64).unwrap(), 64).unwrap().eigenvalues(6).unwrap();
    for (s, e) in sigma.iter().zip([0.0, 1.0, 1.0, 2.0, 2.0, 3.0, 3.0]) {
        assert!((s - e).abs() < 1e-12);
    }
    for lambda in [0.5, 2.0, 7.3] {
        let s = assemble(&BoundaryWeight::constant(lambda, 64).unwrap(), 64).unwrap().eigenvalues(1).unwrap();
        assert!((s[1] - 1.0 / lambda).abs() < 1e-12);
    }
}

#[test]
fn poisson_kernel_weight_is_a_mobius_image_of_one() {
    // The Poisson kernel is |φ′| for a disk automorphism φ: same spectrum as Θ ≡ 1.
    let a = Complex64::new(0.3, 0.2);
    let w = BoundaryWeight::from_fn(1024, |t| {
        let z = Complex64::from_polar(1.0, t);
        (1.0 - a.norm_sqr()) / (Complex64::new(1.0, 0.0) - a.conj() * z).norm_sqr()
    })
    .unwrap();
    let (sigma, _) = converged_eigenvalues(&w, 4, 64, 1e-12).unwrap();
    for (s, e) in sigma.iter().zip([0.0, 1.0, 1.0, 2.0, 2.0]) {
        assert!((s - e).abs() < 1e-9, "{s} vs {e}");
    }
    let (centred, _) = normalize_center(&w).unwrap();
    assert!(centred.sup_distance(1.0) < 1e-8);
}

#[test]
fn deficit_of_a_single_mode() {
    let d = deficit(&trig_weight(&[(8, 0.2, 0.0)], 1024)).unwrap();
    assert!(d > 0.0 && d <= 0.04 / 5.0);
}

fn weight_strategy() -> impl Strategy<Value = BoundaryWeight> {
    prop::collection::vec((1usize..8, -0.12f64..0.12, -0.12f64..0.12), 1..4)
        .prop_map(|terms| trig_weight(&terms, 128))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn enlarging_the_trial_space_lowers_eigenvalues(w in weight_strategy()) {
        let coarse = assemble(&w, 8).unwrap().eigenvalues(6).unwrap();
        let fine = assemble(&w, 16).unwrap().eigenvalues(6).unwrap();
        for (c, f) in coarse.iter().zip(&fine) {
            prop_assert!(*f <= c + 1e-12);
        }
    }

    #[test]
    fn rotation_leaves_the_spectrum_unchanged(w in weight_strategy(), shift in 0usize..128) {
        let mut rotated = w.samples().to_vec();
        rotated.rotate_left(shift);
        let r = BoundaryWeight::from_samples(rotated).unwrap();
        let a = assemble(&w, 32).unwrap().eigenvalues(5).unwrap();
        let b = assemble(&r, 32).unwrap().eigenvalues(5).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn mobius_pullback_leaves_the_spectrum_unchanged(
        w in weight_strategy(), r in 0.0f64..0.4, phase in 0.0f64..(2.0 * PI)
    ) {
        let w = w.resample(1024).unwrap();
        let moved = mobius_pullback(&w, Complex64::from_polar(r, phase)).unwrap();
        let (a, _) = converged_eigenvalues(&w, 3, 64, 1e-11).unwrap();
        let (b, _) = converged_eigenvalues(&moved, 3, 64, 1e-11).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-7, "{} vs {}", x, y);
        }
    }

    #[test]
    fn weinstock_and_weight_brackets(w in weight_strategy()) {
        let sigma = assemble(&w, 32).unwrap().eigenvalues(4).unwrap();
        prop_assert!(sigma[1] * w.mean() <= 1.0 + 1e-12);
        // Rayleigh quotients compare with those of the constants min Θ and max Θ
        for (k, s) in sigma.iter().enumerate().skip(1) {
            let disk = k.div_ceil(2) as f64;
            prop_assert!(*s >= disk / w.max_value() - 1e-12);
            prop_assert!(*s <= disk / w.min_value() + 1e-12);
        }
    }
}
