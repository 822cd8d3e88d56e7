use std::f64::consts::PI;

use num_complex::Complex64;

use crate::conformal::{series, ConformalMap};
use crate::error::{Error, Result};
use crate::fourier;
use crate::quad;

/// `P(a) = (1/2π)∫₀^{2π} |1 + a e^{it}| dt`, the mean modulus of `1 + a e^{it}`.
/// Even in `a`; strictly increasing on `[0, ∞)` with `P(0) = 1`, `P(1) = 4/π`.
pub fn p_function(a: f64) -> f64 {
    let a = a.abs();
    quad::integrate(|t| (1.0 + a * a + 2.0 * a * t.cos()).sqrt(), 0.0, PI, 1e-13) / PI
}

fn p_derivative(a: f64) -> f64 {
    quad::integrate(
        |t| {
            let s = (1.0 + a * a + 2.0 * a * t.cos()).sqrt();
            if s > 0.0 { (a + t.cos()) / s } else { 0.0 }
        },
        0.0,
        PI,
        1e-13,
    ) / PI
}

/// Inverse of [`p_function`] on `[1, 4/π)`, by safeguarded Newton iteration.
pub fn p_inverse(y: f64) -> Result<f64> {
    let top = 4.0 / PI;
    if !(1.0..top).contains(&y) {
        return Err(Error::InvalidInput(format!("P⁻¹ needs y in [1, 4/π), got {y}")));
    }
    if y == 1.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    // P(a) ≈ 1 + a²/4 near zero
    let mut a = (4.0 * (y - 1.0)).sqrt().min(0.999);
    for _ in 0..200 {
        let r = p_function(a) - y;
        if r > 0.0 {
            hi = a;
        } else {
            lo = a;
        }
        if r.abs() < 1e-15 || hi - lo < 1e-15 {
            break;
        }
        let d = p_derivative(a);
        let next = a - r / d;
        a = if d > 0.0 && next > lo && next < hi { next } else { 0.5 * (lo + hi) };
    }
    Ok(a)
}

/// Output of [`instability_map`].
#[derive(Debug, Clone)]
pub struct InstabilityMap {
    /// `g_n(z) = g(z) + z^{n+1} f(z)/(n+1)`.
    pub map: ConformalMap,
    /// The constant `Λ` with `|g′|·P(|f/g′|) = Λ` on the boundary.
    pub lambda: f64,
    /// Open interval of admissible `Λ`: `(max|g′|, (4/π)·min|g′|)`.
    pub admissible: (f64, f64),
    /// Power series of `f`.
    pub f_coeffs: Vec<Complex64>,
}

/// Oscillatory perturbation `g_n = g + z^{n+1} f/(n+1)` of `base`, where
/// `|f| = |g′|·P⁻¹(Λ/|g′|)` on the boundary, `f` has no zeros and the
/// additive constant of `arg f` is zero. `Λ` is the midpoint of the
/// admissible interval.
pub fn instability_map(base: &ConformalMap, n: usize) -> Result<InstabilityMap> {
    if n == 0 {
        return Err(Error::InvalidInput("oscillation order must be positive".into()));
    }
    let m = base.natural_grid();
    let g_abs = base.boundary_deriv_abs(m);
    let max = g_abs.iter().copied().fold(0.0, f64::max);
    let min = g_abs.iter().copied().fold(f64::INFINITY, f64::min);
    let (lo, hi) = (max, 4.0 / PI * min);
    if !(lo < hi) {
        return Err(Error::Precondition(format!(
            "max|g′|/min|g′| = {} must be below 4/π = {}",
            max / min,
            4.0 / PI
        )));
    }
    let lambda = 0.5 * (lo + hi);
    let mut cache: Vec<(f64, f64)> = Vec::new();
    let mut log_f = Vec::with_capacity(m);
    for &g in &g_abs {
        let a = match cache.iter().find(|(key, _)| *key == g) {
            Some(&(_, a)) => a,
            None => {
                let a = p_inverse(lambda / g)?;
                if cache.len() < 64 {
                    cache.push((g, a));
                }
                a
            }
        };
        log_f.push((g * a).ln());
    }
    let c = fourier::analyze_real(&log_f)?;
    let mut a = Vec::with_capacity(c.n_max() + 1);
    a.push(Complex64::new(c.coeff(0).re, 0.0));
    for k in 1..=c.n_max() as i64 {
        a.push(c.coeff(k) * 2.0);
    }
    let mut f = series::exp_series(&a);
    let scale = f[0].norm();
    while f.len() > 1 && f.last().is_some_and(|z| z.norm() < 1e-14 * scale) {
        f.pop();
    }

    let f_abs: Vec<f64> = series::eval_on_circle(&f, 1.0, m).iter().map(|z| z.norm()).collect();
    let worst = f_abs.iter().zip(&g_abs).map(|(x, y)| x / y).fold(0.0, f64::max);
    if !(worst < 1.0) {
        return Err(Error::NotConverged { what: "|f| < |g′| on the boundary".into(), residual: worst });
    }

    let mut coeffs = base.map_coeffs().to_vec();
    let len = coeffs.len().max(n + 1 + f.len());
    coeffs.resize(len, Complex64::new(0.0, 0.0));
    for (j, &fj) in f.iter().enumerate() {
        coeffs[n + 1 + j] += fj / (n + 1) as f64;
    }
    let map = ConformalMap::from_map_coeffs(coeffs)?;
    Ok(InstabilityMap { map, lambda, admissible: (lo, hi), f_coeffs: f })
}
