use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{self, FourierSeries};
use crate::quad;

/// Grid size used when a caller does not choose one.
pub const DEFAULT_GRID: usize = 1024;

/// Relative threshold below which Fourier coefficients count as absent.
pub(crate) const COEFF_REL_TOL: f64 = 1e-13;

/// Strictly positive density `Θ` on the unit circle, held both as samples on
/// the uniform grid and as its Fourier series.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryWeight {
    series: FourierSeries,
    samples: Vec<f64>,
    min_value: f64,
    max_value: f64,
}

impl BoundaryWeight {
    /// Builds a weight from samples at `t_j = 2πj/m`.
    pub fn from_samples(samples: Vec<f64>) -> Result<Self> {
        let series = fourier::analyze_real(&samples)?;
        Self::with_parts(series, samples)
    }

    /// Samples `f` on an `m`-point grid.
    pub fn from_fn(m: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_samples(fourier::grid_angles(m).into_iter().map(f).collect())
    }

    /// Synthesizes a real series on an `m`-point grid.
    pub fn from_series(series: &FourierSeries, m: usize) -> Result<Self> {
        let scale = series.centered().iter().map(|c| c.norm()).fold(0.0, f64::max);
        if !series.is_real(1e-12 * scale.max(1.0)) {
            return Err(Error::InvalidInput("weight series is not real (f̂(−n) ≠ conj f̂(n))".into()));
        }
        let samples = fourier::synthesize_real(series, m)?;
        let analyzed = fourier::analyze_real(&samples)?;
        Self::with_parts(analyzed, samples)
    }

    pub fn constant(value: f64, m: usize) -> Result<Self> {
        Self::from_samples(vec![value; m])
    }

    fn with_parts(series: FourierSeries, samples: Vec<f64>) -> Result<Self> {
        let min_value = samples.iter().copied().fold(f64::INFINITY, f64::min);
        let max_value = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !(min_value > 0.0) || !max_value.is_finite() {
            return Err(Error::NonPositiveWeight { min: min_value });
        }
        Ok(Self { series, samples, min_value, max_value })
    }

    pub fn series(&self) -> &FourierSeries {
        &self.series
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn grid_size(&self) -> usize {
        self.samples.len()
    }

    pub fn min_value(&self) -> f64 {
        self.min_value
    }

    pub fn max_value(&self) -> f64 {
        self.max_value
    }

    /// `Θ̂(n)`.
    pub fn coeff(&self, n: i64) -> Complex64 {
        self.series.coeff(n)
    }

    /// `Θ̂(0)`, the mean of the weight.
    pub fn mean(&self) -> f64 {
        self.series.coeff(0).re
    }

    /// Fourier interpolant at an arbitrary angle.
    pub fn eval(&self, t: f64) -> f64 {
        self.series.eval(t).re
    }

    /// Largest frequency carrying a coefficient above `1e-13·Θ̂(0)`.
    pub fn bandwidth(&self) -> usize {
        self.series.bandwidth(COEFF_REL_TOL * self.mean().abs())
    }

    /// `max_j |Θ(t_j) − c|`.
    pub fn sup_distance(&self, c: f64) -> f64 {
        self.samples.iter().map(|v| (v - c).abs()).fold(0.0, f64::max)
    }

    /// `‖log Θ‖_∞` on the grid.
    pub fn log_sup_norm(&self) -> f64 {
        self.min_value.ln().abs().max(self.max_value.ln().abs())
    }

    /// The same weight re-sampled on an `m`-point grid.
    pub fn resample(&self, m: usize) -> Result<Self> {
        Self::from_series(&self.series, m)
    }
}

/// `Θ / Θ̂(0)`.
pub fn normalize_mean(weight: &BoundaryWeight) -> BoundaryWeight {
    let mean = weight.mean();
    BoundaryWeight {
        series: weight.series.scale(1.0 / mean),
        samples: weight.samples.iter().map(|v| v / mean).collect(),
        min_value: weight.min_value / mean,
        max_value: weight.max_value / mean,
    }
}

fn check_disk_point(zeta: Complex64) -> Result<()> {
    if zeta.norm() < 1.0 && zeta.re.is_finite() && zeta.im.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("ζ = {zeta} is not in the open unit disk")))
    }
}

fn pullback_samples(weight: &BoundaryWeight, zeta: Complex64) -> Vec<f64> {
    let kernel_num = 1.0 - zeta.norm_sqr();
    fourier::grid_angles(weight.grid_size())
        .into_iter()
        .map(|t| {
            let z = Complex64::from_polar(1.0, t);
            let denom = Complex64::new(1.0, 0.0) - zeta.conj() * z;
            let w = (z - zeta) / denom;
            weight.eval(w.arg()) * kernel_num / denom.norm_sqr()
        })
        .collect()
}

/// Pullback `Θ(φ_{−ζ}(z))·(1−|ζ|²)/|1−ζ̄z|²` of the weight under the disk
/// automorphism `φ_ζ(z) = (z+ζ)/(1+ζ̄z)`. Pulling back by `ζ` and then by
/// `−ζ` returns the original weight.
pub fn mobius_pullback(weight: &BoundaryWeight, zeta: Complex64) -> Result<BoundaryWeight> {
    check_disk_point(zeta)?;
    if zeta == Complex64::new(0.0, 0.0) {
        return Ok(weight.clone());
    }
    BoundaryWeight::from_samples(pullback_samples(weight, zeta))
}

/// `Θ̂_ζ(1)` of the pullback, computed from its grid samples.
fn first_moment(weight: &BoundaryWeight, zeta: Complex64) -> Complex64 {
    let samples = pullback_samples(weight, zeta);
    let m = samples.len() as f64;
    fourier::grid_angles(samples.len())
        .into_iter()
        .zip(samples)
        .map(|(t, v)| Complex64::from_polar(v, -t))
        .sum::<Complex64>()
        / m
}

const CENTER_CAP: f64 = 0.95;
const CENTER_TOL: f64 = 1e-12;

fn newton_center(weight: &BoundaryWeight, start: Complex64) -> (Complex64, f64) {
    let mut zeta = start;
    let mut res = first_moment(weight, zeta);
    let h = 1e-6;
    for _ in 0..60 {
        if res.norm() <= CENTER_TOL {
            break;
        }
        let dx = (first_moment(weight, zeta + h) - first_moment(weight, zeta - h)) / (2.0 * h);
        let dy = (first_moment(weight, zeta + Complex64::new(0.0, h))
            - first_moment(weight, zeta - Complex64::new(0.0, h)))
            / (2.0 * h);
        // Jacobian columns ∂(Re, Im)/∂x and ∂(Re, Im)/∂y
        let det = dx.re * dy.im - dy.re * dx.im;
        if det.abs() < 1e-300 {
            break;
        }
        let step = Complex64::new(
            -(dy.im * res.re - dy.re * res.im) / det,
            -(-dx.im * res.re + dx.re * res.im) / det,
        );
        let mut lambda = 1.0;
        let mut accepted = false;
        while lambda > 1e-4 {
            let mut trial = zeta + step * lambda;
            if trial.norm() > CENTER_CAP {
                trial *= CENTER_CAP / trial.norm();
            }
            let r = first_moment(weight, trial);
            if r.norm() < res.norm() {
                zeta = trial;
                res = r;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (zeta, res.norm())
}

/// Finds `ζ_g` such that the pullback of `Θ` by `ζ_g` has `Θ̂(±1) = 0`, and
/// returns that pullback together with `ζ_g`.
pub fn normalize_center(weight: &BoundaryWeight) -> Result<(BoundaryWeight, Complex64)> {
    let start = -weight.coeff(1).conj() / weight.mean();
    let start = if start.norm() > CENTER_CAP { start * (CENTER_CAP / start.norm()) } else { start };
    let (mut zeta, mut res) = newton_center(weight, start);
    if res > CENTER_TOL {
        // Continuation from the constant weight, whose centre is 0.
        zeta = Complex64::new(0.0, 0.0);
        let steps = 16;
        for i in 1..=steps {
            let s = i as f64 / steps as f64;
            let blend: Vec<f64> = weight.samples().iter().map(|v| 1.0 + s * (v - 1.0)).collect();
            let w = BoundaryWeight::from_samples(blend)?;
            let (z, r) = newton_center(&w, zeta);
            zeta = z;
            res = r;
        }
    }
    if res > 1e-10 {
        return Err(Error::NotConverged { what: "Möbius centring".into(), residual: res });
    }
    Ok((mobius_pullback(weight, zeta)?, zeta))
}

/// Radius `r(K)` of the disk that must contain `ζ_g` whenever `‖log Θ‖_∞ ≤ K`:
/// the smallest `r` with `e^{−K}∫_{|t|≤π/2} + e^{K}∫_{|t|≥π/2} cos t/|1−re^{it}|² dt > 0`.
pub fn center_radius_bound(k: f64) -> f64 {
    let criterion = |r: f64| {
        let f = |t: f64| t.cos() / (1.0 - 2.0 * r * t.cos() + r * r);
        let near = quad::integrate(f, -PI / 2.0, PI / 2.0, 1e-11);
        let far = quad::integrate(f, PI / 2.0, 1.5 * PI, 1e-11);
        (-k).exp() * near + k.exp() * far
    };
    if criterion(0.0) > 0.0 {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0 - 1e-15);
    // The near integral blows up like 1/(1−r) while the far one stays bounded.
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if criterion(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `‖Θ − 1‖_{H^{−1/2}}`.
pub fn hminus_half_distance(weight: &BoundaryWeight) -> f64 {
    fourier::sobolev_norm(weight.series(), -0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poisson(a: Complex64, m: usize) -> BoundaryWeight {
        BoundaryWeight::from_fn(m, |t| {
            let z = Complex64::from_polar(1.0, t);
            (1.0 - a.norm_sqr()) / (Complex64::new(1.0, 0.0) - a.conj() * z).norm_sqr()
        })
        .unwrap()
    }

    #[test]
    fn rejects_non_positive_samples() {
        let e = BoundaryWeight::from_fn(64, |t| 1.0 + 1.5 * (2.0 * t).cos()).unwrap_err();
        match e {
            Error::NonPositiveWeight { min } => assert!((min + 0.5).abs() < 1e-12),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn series_and_samples_agree() {
        let w = BoundaryWeight::from_fn(256, |t| (0.3 * t.sin() + 0.1 * (5.0 * t).cos()).exp()).unwrap();
        let back = fourier::synthesize_real(w.series(), 256).unwrap();
        for (a, b) in back.iter().zip(w.samples()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn normalize_mean_examples() {
        let w = normalize_mean(&BoundaryWeight::constant(5.0, 32).unwrap());
        assert!(w.samples().iter().all(|v| (v - 1.0).abs() < 1e-15));
        let w = normalize_mean(&BoundaryWeight::from_fn(64, |t| 2.0 + t.cos()).unwrap());
        assert!((w.coeff(1).re - 0.25).abs() < 1e-14);
        assert!((w.mean() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pullback_of_constant_is_poisson_kernel() {
        let one = BoundaryWeight::constant(1.0, 256).unwrap();
        let zeta = Complex64::new(0.3, 0.0);
        let p = mobius_pullback(&one, zeta).unwrap();
        let kernel = poisson(zeta, 256);
        for (a, b) in p.samples().iter().zip(kernel.samples()) {
            assert!((a - b).abs() < 1e-13);
        }
        assert!((p.mean() - 1.0).abs() < 1e-12);
        assert_eq!(mobius_pullback(&one, Complex64::new(0.0, 0.0)).unwrap(), one);
        assert!(mobius_pullback(&one, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn pullback_inverse_composition() {
        let w = BoundaryWeight::from_fn(512, |t| 1.0 + 0.2 * (3.0 * t).cos() + 0.1 * t.sin()).unwrap();
        let zeta = Complex64::new(0.25, -0.15);
        let there = mobius_pullback(&w, zeta).unwrap();
        let back = mobius_pullback(&there, -zeta).unwrap();
        for (a, b) in back.samples().iter().zip(w.samples()) {
            assert!((a - b).abs() < 1e-9);
        }
        assert!((there.mean() - w.mean()).abs() < 1e-9);
    }

    #[test]
    fn center_of_constant_and_symmetric_weights() {
        let (w, z) = normalize_center(&BoundaryWeight::constant(1.0, 128).unwrap()).unwrap();
        assert!(z.norm() < 1e-14);
        assert!(w.samples().iter().all(|v| (v - 1.0).abs() < 1e-14));
        let (_, z) = normalize_center(&BoundaryWeight::from_fn(256, |t| 1.0 + 0.1 * (2.0 * t).cos()).unwrap()).unwrap();
        assert!(z.norm() < 1e-12);
    }

    #[test]
    fn center_inverts_a_pullback() {
        let one = BoundaryWeight::constant(1.0, 512).unwrap();
        let theta = mobius_pullback(&one, Complex64::new(0.3, 0.0)).unwrap();
        let (w, z) = normalize_center(&theta).unwrap();
        assert!((z - Complex64::new(-0.3, 0.0)).norm() < 1e-8);
        assert!(w.samples().iter().all(|v| (v - 1.0).abs() < 1e-8));
        assert!(w.coeff(1).norm() < 1e-10 && w.coeff(-1).norm() < 1e-10);
        assert!(z.norm() <= center_radius_bound(theta.log_sup_norm()));
    }

    #[test]
    fn center_of_generic_weight() {
        let theta = BoundaryWeight::from_fn(512, |t| (0.4 * t.cos() + 0.2 * (2.0 * t).sin() - 0.1 * t.sin()).exp()).unwrap();
        let theta = normalize_mean(&theta);
        let (w, z) = normalize_center(&theta).unwrap();
        assert!(w.coeff(1).norm() <= 1e-10);
        assert!(z.norm() <= center_radius_bound(theta.log_sup_norm()) + 1e-12);
    }

    #[test]
    fn radius_bound_grows_with_k() {
        assert!(center_radius_bound(0.0) < 1e-9);
        let a = center_radius_bound(0.2);
        let b = center_radius_bound(0.8);
        assert!(0.0 < a && a < b && b < 1.0);
    }

    #[test]
    fn hminus_half_examples() {
        assert!(hminus_half_distance(&BoundaryWeight::constant(1.0, 64).unwrap()) < 1e-15);
        let w = BoundaryWeight::from_fn(256, |t| 1.0 + 0.2 * (8.0 * t).cos()).unwrap();
        assert!((hminus_half_distance(&w) - 0.05).abs() < 1e-12);
    }
}
