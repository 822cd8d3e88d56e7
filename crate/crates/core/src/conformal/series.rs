//! Truncated power series on the disk.

use num_complex::Complex64;

use crate::fourier::roots_of_unity;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `exp` of a power series, truncated to the same length.
pub fn exp_series(a: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let mut b = vec![ZERO; n];
    b[0] = a[0].exp();
    for k in 1..n {
        let mut s = ZERO;
        for j in 1..=k {
            s += a[j] * b[k - j] * j as f64;
        }
        b[k] = s / k as f64;
    }
    b
}

/// Principal `log` of a power series with nonzero constant term.
pub fn log_series(g: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = g.len();
    if n == 0 || g[0].norm() == 0.0 {
        return None;
    }
    let mut l = vec![ZERO; n];
    l[0] = g[0].ln();
    for k in 1..n {
        let mut s = g[k] * k as f64;
        for j in 1..k {
            s -= l[j] * g[k - j] * j as f64;
        }
        l[k] = s / (g[0] * k as f64);
    }
    Some(l)
}

/// Horner evaluation of `Σ c_k z^k`.
pub fn eval(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(ZERO, |acc, &ck| acc * z + ck)
}

/// `Σ c_k r^k e^{ikt_j}` on the `m`-point grid.
pub fn eval_on_circle(c: &[Complex64], r: f64, m: usize) -> Vec<Complex64> {
    let roots = roots_of_unity(m);
    let mut out = vec![ZERO; m];
    let mut rk = 1.0;
    for (k, &ck) in c.iter().enumerate() {
        let a = ck * rk;
        rk *= r;
        if a == ZERO {
            continue;
        }
        let step = k % m;
        let mut idx = 0usize;
        for v in out.iter_mut() {
            *v += a * roots[idx];
            idx += step;
            if idx >= m {
                idx -= m;
            }
        }
    }
    out
}

/// Coefficients of the derivative.
pub fn derivative(c: &[Complex64]) -> Vec<Complex64> {
    c.iter().enumerate().skip(1).map(|(k, &ck)| ck * k as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn exp_then_log_roundtrip() {
        let a = vec![c(0.2), Complex64::new(0.1, -0.3), c(0.05), Complex64::new(0.0, 0.02), c(0.0)];
        let b = exp_series(&a);
        let back = log_series(&b).unwrap();
        for (x, y) in a.iter().zip(&back) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn exp_of_z_is_exponential_series() {
        let b = exp_series(&[c(0.0), c(1.0), c(0.0), c(0.0), c(0.0)]);
        let expected = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0];
        for (x, e) in b.iter().zip(expected) {
            assert!((x.re - e).abs() < 1e-15);
        }
    }

    #[test]
    fn circle_evaluation_matches_horner() {
        let coeffs = vec![c(1.0), Complex64::new(0.5, 0.1), c(-0.2), c(0.03)];
        let vals = eval_on_circle(&coeffs, 0.7, 16);
        for (j, v) in vals.iter().enumerate() {
            let z = Complex64::from_polar(0.7, 2.0 * std::f64::consts::PI * j as f64 / 16.0);
            assert!((v - eval(&coeffs, z)).norm() < 1e-14);
        }
    }
}
