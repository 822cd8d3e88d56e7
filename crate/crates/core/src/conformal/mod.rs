//! Holomorphic maps `g` of the disk with prescribed boundary derivative
//! modulus `|g′| = Θ`, and the geometry of the domains `g(D)`.

mod hausdorff;
pub mod series;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::disk::BoundaryWeight;
use crate::error::{Error, Result};
use crate::fourier;

pub use hausdorff::{hausdorff_to_disk, hausdorff_to_disk_with, HausdorffFit};

/// Tail size above which a reconstruction is flagged as under-resolved.
pub const TAIL_WARNING: f64 = 1e-8;

/// Power series of a map `g` with `g(0) = 0` and non-vanishing `g′ = exp(F)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalMap {
    deriv_log_coeffs: Vec<Complex64>,
    deriv_coeffs: Vec<Complex64>,
    map_coeffs: Vec<Complex64>,
    truncation_tail: f64,
}

impl ConformalMap {
    /// `g` with `log g′ = Σ a_n z^n`, `n < a.len()`.
    pub fn from_deriv_log(a: Vec<Complex64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidInput("empty series for log g′".into()));
        }
        let deriv_coeffs = series::exp_series(&a);
        Ok(Self::assemble(a, deriv_coeffs, 0.0))
    }

    /// `g(z) = Σ c_k z^k`; requires `c_0 = 0` and `c_1 ≠ 0`.
    pub fn from_map_coeffs(c: Vec<Complex64>) -> Result<Self> {
        if c.len() < 2 || c[0].norm() != 0.0 || c[1].norm() == 0.0 {
            return Err(Error::InvalidInput("map needs g(0) = 0 and g′(0) ≠ 0".into()));
        }
        let deriv_coeffs = series::derivative(&c);
        let log = series::log_series(&deriv_coeffs).expect("g′(0) ≠ 0");
        Ok(Self { deriv_log_coeffs: log, deriv_coeffs, map_coeffs: c, truncation_tail: 0.0 })
    }

    pub fn identity() -> Self {
        Self::from_map_coeffs(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
            .expect("identity is a valid map")
    }

    fn assemble(a: Vec<Complex64>, b: Vec<Complex64>, tail: f64) -> Self {
        let mut c = Vec::with_capacity(b.len() + 1);
        c.push(Complex64::new(0.0, 0.0));
        c.extend(b.iter().enumerate().map(|(k, &bk)| bk / (k + 1) as f64));
        Self { deriv_log_coeffs: a, deriv_coeffs: b, map_coeffs: c, truncation_tail: tail }
    }

    /// Number of retained terms of `log g′` (and of `g′`).
    pub fn n_terms(&self) -> usize {
        self.deriv_coeffs.len()
    }

    pub fn deriv_log_coeffs(&self) -> &[Complex64] {
        &self.deriv_log_coeffs
    }

    /// Coefficients of `g′`.
    pub fn deriv_coeffs(&self) -> &[Complex64] {
        &self.deriv_coeffs
    }

    /// Coefficients of `g`, index `k` for `z^k`.
    pub fn map_coeffs(&self) -> &[Complex64] {
        &self.map_coeffs
    }

    /// Sup-norm bound `2Σ_{n≥n_terms}|(log Θ)^(n)|` of the discarded part of `log g′` on the boundary.
    pub fn truncation_tail(&self) -> f64 {
        self.truncation_tail
    }

    pub fn truncation_warning(&self) -> bool {
        self.truncation_tail > TAIL_WARNING
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        series::eval(&self.map_coeffs, z)
    }

    pub fn deriv(&self, z: Complex64) -> Complex64 {
        series::eval(&self.deriv_coeffs, z)
    }

    pub fn second_deriv(&self, z: Complex64) -> Complex64 {
        series::eval(&series::derivative(&self.deriv_coeffs), z)
    }

    /// `|g′(e^{it_j})|` on an `m`-point grid.
    pub fn boundary_deriv_abs(&self, m: usize) -> Vec<f64> {
        series::eval_on_circle(&self.deriv_coeffs, 1.0, m).into_iter().map(|z| z.norm()).collect()
    }

    /// The boundary weight `|g′|` sampled on an `m`-point grid.
    pub fn boundary_weight(&self, m: usize) -> Result<BoundaryWeight> {
        BoundaryWeight::from_samples(self.boundary_deriv_abs(m))
    }

    /// A grid fine enough to resolve the boundary trace of the series.
    pub fn natural_grid(&self) -> usize {
        (8 * self.n_terms()).clamp(1024, 1 << 15).next_power_of_two()
    }

    /// Smallest power-of-two grid, from [`Self::natural_grid`] up to `2^18`,
    /// on which the trapezoid mean of `|g′|` agrees with the doubled grid to
    /// `rel_tol`. `|g′|` is not a polynomial, so its samples alias unless the
    /// grid outruns the decay of its Fourier coefficients.
    pub fn resolved_grid(&self, rel_tol: f64) -> usize {
        let mean = |m: usize| self.boundary_deriv_abs(m).iter().sum::<f64>() / m as f64;
        let mut m = self.natural_grid();
        let mut current = mean(m);
        while m < 1 << 18 {
            let next = mean(2 * m);
            if (next - current).abs() <= rel_tol * next {
                break;
            }
            m *= 2;
            current = next;
        }
        m
    }
}

/// Reconstructs `g` from `|g′| = Θ` on the boundary, keeping `n_terms`
/// coefficients of `log g′ = H(log Θ) + i·conj(log Θ)`. Gauge: `g(0) = 0`,
/// `g′(0) > 0`.
pub fn reconstruct(weight: &BoundaryWeight, n_terms: usize) -> Result<ConformalMap> {
    if weight.min_value() <= 0.0 {
        return Err(Error::InvalidInput(format!("weight minimum {} is not positive", weight.min_value())));
    }
    let logs: Vec<f64> = weight.samples().iter().map(|v| v.ln()).collect();
    let c = fourier::analyze_real(&logs)?;
    if n_terms == 0 || n_terms > c.n_max() + 1 {
        return Err(Error::InvalidInput(format!(
            "n_terms = {n_terms} must lie in 1..={} for a {}-point grid",
            c.n_max() + 1,
            weight.grid_size()
        )));
    }
    let mut a = Vec::with_capacity(n_terms);
    a.push(Complex64::new(c.coeff(0).re, 0.0));
    for n in 1..n_terms as i64 {
        a.push(c.coeff(n) * 2.0);
    }
    let tail: f64 = (n_terms as i64..=c.n_max() as i64).map(|n| 2.0 * c.coeff(n).norm()).sum();
    let b = series::exp_series(&a);
    Ok(ConformalMap::assemble(a, b, tail))
}

/// Points `g(e^{it_j})`, `j = 0..m`; closure implicit.
pub fn boundary_curve(map: &ConformalMap, m: usize) -> Result<Vec<[f64; 2]>> {
    if m < 3 {
        return Err(Error::InvalidInput(format!("need at least 3 curve samples, got {m}")));
    }
    Ok(series::eval_on_circle(map.map_coeffs(), 1.0, m).into_iter().map(|z| [z.re, z.im]).collect())
}

/// `∫_{∂D} |g′| dσ`, on a grid resolving it to 1e−13.
pub fn perimeter(map: &ConformalMap) -> f64 {
    let m = 2 * map.resolved_grid(1e-13);
    let s: f64 = map.boundary_deriv_abs(m).iter().sum();
    2.0 * PI * s / m as f64
}

/// Number of radii on the interior grid `1 − 2^{−j/4}`, `j = 0..RADII`.
const RADII: usize = 49;
/// Radius beyond which the analytic tail bound takes over: `1 − 2^{−12}`.
const EDGE: f64 = 1.0 - 1.0 / 4096.0;

/// Upper estimate of `sup_{|z|<1} (1−|z|²)|z g″(z)/g′(z)|`; values ≤ 1 certify
/// that `g` is injective on the disk.
pub fn univalence_margin(map: &ConformalMap) -> f64 {
    let d1 = map.deriv_coeffs().to_vec();
    let d2 = series::derivative(&d1);
    if d2.iter().all(|c| c.norm() == 0.0) {
        return 0.0;
    }
    let m = (8 * map.n_terms()).clamp(256, 8192).next_power_of_two();
    let quotient = |r: f64, vals1: &[Complex64], vals2: &[Complex64], j: usize| {
        (1.0 - r * r) * r * (vals2[j] / vals1[j]).norm()
    };
    let grid: Vec<(f64, f64, usize)> = (0..RADII)
        .into_par_iter()
        .map(|j| {
            let r = 1.0 - 2f64.powf(-(j as f64) / 4.0);
            let v1 = series::eval_on_circle(&d1, r, m);
            let v2 = series::eval_on_circle(&d2, r, m);
            let (best, idx) = (0..m)
                .map(|i| (quotient(r, &v1, &v2, i), i))
                .fold((0.0, 0), |acc, x| if x.0 > acc.0 { x } else { acc });
            (best, r, idx)
        })
        .collect();
    let (mut best, r0, i0) = grid.into_iter().fold((0.0, 0.0, 0), |acc, x| if x.0 > acc.0 { x } else { acc });

    // Compass search around the best grid point.
    let q = |r: f64, t: f64| {
        let z = Complex64::from_polar(r, t);
        let g1 = series::eval(&d1, z);
        let g2 = series::eval(&d2, z);
        (1.0 - r * r) * r * (g2 / g1).norm()
    };
    let (mut r, mut t) = (r0, 2.0 * PI * i0 as f64 / m as f64);
    let (mut dr, mut dt) = ((1.0 - r).max(1e-4) * 0.25, 2.0 * PI / m as f64);
    for _ in 0..60 {
        let mut moved = false;
        for (er, et) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
            let rr = (r + er * dr).clamp(0.0, EDGE);
            let tt = t + et * dt;
            let v = q(rr, tt);
            if v > best {
                best = v;
                r = rr;
                t = tt;
                moved = true;
            }
        }
        if !moved {
            dr *= 0.5;
            dt *= 0.5;
        }
    }

    // |z g″| ≤ Σ|coeffs of g″| and |g′| ≥ min_∂|g′| in the band |z| > EDGE.
    let l1: f64 = d2.iter().map(|c| c.norm()).sum();
    let min_boundary = map
        .boundary_deriv_abs(map.natural_grid())
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let edge_bound = (1.0 - EDGE * EDGE) * l1 / min_boundary;
    best.max(edge_bound)
}

/// `‖log|g′|‖_{C^{0,α}(∂D)}` estimated on the boundary grid.
pub fn apriori_norm(map: &ConformalMap, alpha: f64) -> Result<f64> {
    let m = if alpha < 1.0 { map.natural_grid().min(4096) } else { map.natural_grid() };
    let logs: Vec<f64> = map.boundary_deriv_abs(m).iter().map(|v| v.ln()).collect();
    let sup = logs.iter().map(|v| v.abs()).fold(0.0, f64::max);
    Ok(sup + fourier::holder_seminorm(&logs, alpha)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn modulus_weight(a: f64, n: usize, m: usize) -> BoundaryWeight {
        BoundaryWeight::from_fn(m, |t| (c(1.0) + Complex64::from_polar(a, n as f64 * t)).norm()).unwrap()
    }

    #[test]
    fn constant_weights_give_scaled_identity() {
        let g = reconstruct(&BoundaryWeight::constant(1.0, 64).unwrap(), 16).unwrap();
        assert!((g.map_coeffs()[1] - c(1.0)).norm() < 1e-14);
        assert!(g.map_coeffs().iter().skip(2).all(|z| z.norm() < 1e-14));
        let g = reconstruct(&BoundaryWeight::constant(2.0, 64).unwrap(), 16).unwrap();
        assert!((g.map_coeffs()[1] - c(2.0)).norm() < 1e-14);
        assert!(reconstruct(&BoundaryWeight::constant(1.0, 64).unwrap(), 40).is_err());
    }

    #[test]
    fn reconstructs_polynomial_derivative() {
        let g = reconstruct(&modulus_weight(0.3, 4, 1024), 400).unwrap();
        let cs = g.map_coeffs();
        assert!((cs[1] - c(1.0)).norm() < 1e-8);
        assert!((cs[5] - c(0.06)).norm() < 1e-8);
        for (k, z) in cs.iter().enumerate() {
            if k != 1 && k != 5 {
                assert!(z.norm() < 1e-8, "coefficient {k} = {z}");
            }
        }
        assert!(!g.truncation_warning());
    }

    #[test]
    fn truncation_is_flagged() {
        let g = reconstruct(&modulus_weight(0.9, 1, 256), 4).unwrap();
        assert!(g.truncation_warning());
        assert!(g.truncation_tail() > 0.1);
    }

    #[test]
    fn curve_samples() {
        let pts = boundary_curve(&ConformalMap::identity(), 4).unwrap();
        let expected = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        for (p, e) in pts.iter().zip(expected) {
            assert!((p[0] - e[0]).abs() < 1e-15 && (p[1] - e[1]).abs() < 1e-15);
        }
        let g = ConformalMap::from_map_coeffs(vec![c(0.0), c(1.0), c(0.0), c(0.0), c(0.0), c(0.06)]).unwrap();
        let pts = boundary_curve(&g, 64).unwrap();
        let radii: Vec<f64> = pts.iter().map(|p| p[0].hypot(p[1])).collect();
        let max = radii.iter().copied().fold(0.0, f64::max);
        assert!((max - 1.06).abs() < 1e-14);
        assert!((radii[0] - 1.06).abs() < 1e-14 && (radii[16] - 1.06).abs() < 1e-14);
        assert!(boundary_curve(&g, 2).is_err());
    }

    #[test]
    fn perimeters() {
        assert!((perimeter(&ConformalMap::identity()) - 2.0 * PI).abs() < 1e-13);
        let g = ConformalMap::from_map_coeffs(vec![c(0.0), c(3.0)]).unwrap();
        assert!((perimeter(&g) - 6.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn univalence_examples() {
        assert_eq!(univalence_margin(&ConformalMap::identity()), 0.0);
        let g = ConformalMap::from_map_coeffs(vec![c(0.0), c(1.0), c(0.0), c(0.0), c(0.0), c(0.06)]).unwrap();
        let m = univalence_margin(&g);
        assert!(m > 0.0 && m < 1.0, "{m}");
        // g′ = 1 + 0.98z nearly vanishes at −1, which drives the margin above 1
        let bad = ConformalMap::from_map_coeffs(vec![c(0.0), c(1.0), c(0.49)]).unwrap();
        assert!(univalence_margin(&bad) > 1.0);
    }

    #[test]
    fn apriori_examples() {
        assert!(apriori_norm(&ConformalMap::identity(), 1.0).unwrap() < 1e-14);
        let g = reconstruct(&BoundaryWeight::constant(2.0, 64).unwrap(), 8).unwrap();
        assert!((apriori_norm(&g, 0.5).unwrap() - 2f64.ln()).abs() < 1e-13);
        let w = BoundaryWeight::from_fn(1024, |t| (0.1 * t.cos()).exp()).unwrap();
        let g = reconstruct(&w, 256).unwrap();
        assert!((apriori_norm(&g, 1.0).unwrap() - 0.2).abs() < 1e-3);
    }

    #[test]
    fn interior_modulus_obeys_maximum_principle() {
        let w = BoundaryWeight::from_fn(512, |t| 1.0 + 0.25 * (3.0 * t).cos() + 0.1 * (5.0 * t).sin()).unwrap();
        let g = reconstruct(&w, 200).unwrap();
        for r in [0.0, 0.3, 0.7, 0.95] {
            for j in 0..32 {
                let z = Complex64::from_polar(r, j as f64 * 0.2);
                let v = g.deriv(z).norm();
                assert!(v >= w.min_value() - 1e-9 && v <= w.max_value() + 1e-9);
            }
        }
    }
}
