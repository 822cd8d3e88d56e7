use num_complex::Complex64;
use proptest::prelude::*;
use steklov::conformal::{
    apriori_norm, boundary_curve, hausdorff_to_disk, perimeter, reconstruct, univalence_margin, ConformalMap,
};
use steklov::disk::BoundaryWeight;
use steklov::experiments::ensemble::WeightSampler;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[test]
fn monomial_perturbation_roundtrip() {
    for (a, n) in [(0.1, 2usize), (0.3, 4), (0.3, 8)] {
        let w = BoundaryWeight::from_fn(1024, |t| (c(1.0) + Complex64::from_polar(a, n as f64 * t)).norm()).unwrap();
        let g = reconstruct(&w, 400).unwrap();
        let coeffs = g.map_coeffs();
        for (k, z) in coeffs.iter().enumerate() {
            let want = match k {
                1 => 1.0,
                k if k == n + 1 => a / (n + 1) as f64,
                _ => 0.0,
            };
            assert!((z - c(want)).norm() < 1e-8, "a = {a}, n = {n}, k = {k}: {z}");
        }
        assert!(!g.truncation_warning());
    }
}

#[test]
fn geometry_of_the_identity() {
    let g = ConformalMap::identity();
    assert!((perimeter(&g) - 2.0 * std::f64::consts::PI).abs() < 1e-13);
    assert_eq!(univalence_margin(&g), 0.0);
    assert!(hausdorff_to_disk(&boundary_curve(&g, 1024).unwrap()).unwrap() < 1e-5);
    assert!(apriori_norm(&g, 1.0).unwrap() < 1e-14);
}

#[test]
fn margin_detects_a_critical_point_near_the_boundary() {
    // g′ = 1 + 0.99 z² nearly vanishes on the circle; the margin exceeds 1
    let g = ConformalMap::from_map_coeffs(vec![c(0.0), c(1.0), c(0.0), c(0.33)]).unwrap();
    assert!(univalence_margin(&g) > 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn small_weights_give_univalent_maps_close_to_the_disk(seed in 0u64..10_000) {
        let s = &WeightSampler::near_one(0.1, 512).draw(seed, 1).unwrap()[0];
        let g = reconstruct(&s.weight, 128).unwrap();
        prop_assert!(univalence_margin(&g) <= 1.0);
        let eps = g.boundary_deriv_abs(512).iter().fold(0.0f64, |a, v| a.max((v - 1.0).abs()));
        let dh = hausdorff_to_disk(&boundary_curve(&g, 1024).unwrap()).unwrap();
        prop_assert!(dh <= 3.0 * eps, "d_H = {} against 3ε = {}", dh, 3.0 * eps);
        let mean = s.weight.mean();
        prop_assert!((perimeter(&g) - 2.0 * std::f64::consts::PI * mean).abs() < 1e-8);
    }
}
