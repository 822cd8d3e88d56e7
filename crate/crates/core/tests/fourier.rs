use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use steklov::fourier::{
    analyze, analyze_real, conjugate, grid_angles, harmonic_extend, holder_seminorm, sobolev_norm, synthesize,
    synthesize_real, FourierSeries,
};

fn modes_strategy() -> impl Strategy<Value = Vec<(i64, Complex64)>> {
    prop::collection::vec((-20i64..=20, -1.0f64..1.0, -1.0f64..1.0), 1..8)
        .prop_map(|v| v.into_iter().map(|(n, a, b)| (n, Complex64::new(a, b))).collect())
}

#[test]
fn spec_examples() {
    let s = analyze_real(&grid_angles(64).iter().map(|t| t.cos()).collect::<Vec<_>>()).unwrap();
    assert!((s.coeff(1).re - 0.5).abs() < 1e-15 && (s.coeff(-1).re - 0.5).abs() < 1e-15);
    assert!(s.coeff(0).norm() < 1e-15);
    let c = conjugate(&s);
    let back = synthesize_real(&c, 64).unwrap();
    for (v, t) in back.iter().zip(grid_angles(64)) {
        assert!((v - t.sin()).abs() < 1e-14);
    }
    let one = FourierSeries::constant(1.0, 16);
    assert!((harmonic_extend(&one, 0.7, 1.0).unwrap().re - 1.0).abs() < 1e-15);
    assert!(harmonic_extend(&one, 1.0, 0.0).is_err());
}

#[test]
fn holder_seminorm_of_a_sine() {
    let m = 4096;
    let samples: Vec<f64> = grid_angles(m).iter().map(|t| t.sin()).collect();
    let lip = holder_seminorm(&samples, 1.0).unwrap();
    assert!((lip - 1.0).abs() < 1e-5 && lip <= 1.0);
    // C^{0,1/2} seminorm of sin is at least its value on antipodal points, 2/√π
    assert!(holder_seminorm(&samples[..], 0.5).unwrap() >= 2.0 / PI.sqrt() - 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn analysis_inverts_synthesis(modes in modes_strategy()) {
        let s = FourierSeries::from_modes(&modes, 64);
        let back = analyze(&synthesize(&s, 64).unwrap()).unwrap();
        for n in -20..=20 {
            prop_assert!((back.coeff(n) - s.coeff(n)).norm() < 1e-13);
        }
    }

    #[test]
    fn parseval(modes in modes_strategy()) {
        let s = FourierSeries::from_modes(&modes, 64);
        let values = synthesize(&s, 64).unwrap();
        let energy: f64 = values.iter().map(|v| v.norm_sqr()).sum::<f64>() / 64.0;
        let coeffs: f64 = (-20..=20).map(|n| s.coeff(n).norm_sqr()).sum();
        prop_assert!((energy - coeffs).abs() < 1e-12 * coeffs.max(1.0));
    }

    #[test]
    fn conjugation_preserves_seminorms_and_squares_to_minus_one(modes in modes_strategy(), s in -1.0f64..1.0) {
        let f = FourierSeries::from_modes(&modes, 64);
        let c = conjugate(&f);
        prop_assert!((sobolev_norm(&c, s) - sobolev_norm(&f, s)).abs() < 1e-12 * sobolev_norm(&f, s).max(1.0));
        let cc = conjugate(&c);
        for n in -20i64..=20 {
            let want = if n == 0 { Complex64::new(0.0, 0.0) } else { -f.coeff(n) };
            prop_assert!((cc.coeff(n) - want).norm() < 1e-14);
        }
    }

    #[test]
    fn harmonic_extension_obeys_the_maximum_principle(modes in modes_strategy(), r in 0.0f64..0.99, t in 0.0f64..(2.0 * PI)) {
        let f = FourierSeries::from_modes(&modes, 64);
        let bound: f64 = (-20..=20).map(|n| f.coeff(n).norm()).sum();
        let v = harmonic_extend(&f, r, t).unwrap();
        prop_assert!(v.norm() <= bound + 1e-12);
        let m = 4096;
        let samples = synthesize(&f, m).unwrap();
        let max_re = samples.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
        // the grid maximum misses the true one by at most |f′|∞·π/m ≤ 20·bound·π/m
        prop_assert!(v.re <= max_re + 20.0 * bound * PI / m as f64);
    }
}
