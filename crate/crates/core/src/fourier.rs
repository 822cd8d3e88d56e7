//! Fourier analysis on the unit circle.
//!
//! Samples always live on the uniform grid `t_j = 2πj/m`, `j = 0..m`.
//! Transforms are direct sums over a table of roots of unity, which keeps
//! the error analysis trivial at the grid sizes used here (m ≤ 8192).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Finitely supported two-sided Fourier coefficient sequence `f̂(n)`, `|n| ≤ n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSeries {
    n_max: usize,
    /// `coeffs[n + n_max] = f̂(n)`.
    coeffs: Vec<Complex64>,
    grid_size: usize,
}

impl FourierSeries {
    /// Builds a series from centred coefficients (`coeffs.len()` must be odd).
    pub fn from_centered(coeffs: Vec<Complex64>, grid_size: usize) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::InvalidInput(format!(
                "centred coefficient vector must have odd length, got {}",
                coeffs.len()
            )));
        }
        let n_max = coeffs.len() / 2;
        Ok(Self { n_max, coeffs, grid_size: grid_size.max(2 * n_max + 1) })
    }

    /// Builds a series from `(n, f̂(n))` pairs; repeated indices add up.
    pub fn from_modes(modes: &[(i64, Complex64)], grid_size: usize) -> Self {
        let n_max = modes.iter().map(|(n, _)| n.unsigned_abs() as usize).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * n_max + 1];
        for &(n, c) in modes {
            coeffs[(n + n_max as i64) as usize] += c;
        }
        Self { n_max, coeffs, grid_size: grid_size.max(2 * n_max + 1) }
    }

    pub fn constant(value: f64, grid_size: usize) -> Self {
        Self::from_modes(&[(0, Complex64::new(value, 0.0))], grid_size)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    /// Centred coefficient slice, `[f̂(−n_max), …, f̂(n_max)]`.
    pub fn centered(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `f̂(n)`, zero outside the stored range.
    pub fn coeff(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.n_max {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(n + self.n_max as i64) as usize]
        }
    }

    pub fn mean(&self) -> Complex64 {
        self.coeff(0)
    }

    /// Largest `|n|` with `|f̂(n)| > tol`, or 0.
    pub fn bandwidth(&self, tol: f64) -> usize {
        (1..=self.n_max)
            .rev()
            .find(|&n| {
                self.coeff(n as i64).norm() > tol || self.coeff(-(n as i64)).norm() > tol
            })
            .unwrap_or(0)
    }

    /// Whether `f̂(−n) = conj f̂(n)` up to `tol`, i.e. the series is a real function.
    pub fn is_real(&self, tol: f64) -> bool {
        (0..=self.n_max as i64).all(|n| (self.coeff(-n) - self.coeff(n).conj()).norm() <= tol)
    }

    /// Applies `op(n, f̂(n))` to every coefficient.
    pub fn map_coeffs(&self, op: impl Fn(i64, Complex64) -> Complex64) -> Self {
        let n_max = self.n_max as i64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| op(i as i64 - n_max, c))
            .collect();
        Self { n_max: self.n_max, coeffs, grid_size: self.grid_size }
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.map_coeffs(|_, c| c * factor)
    }

    /// Returns `self + value` (shifts the mean).
    pub fn add_constant(&self, value: f64) -> Self {
        self.map_coeffs(|n, c| if n == 0 { c + value } else { c })
    }

    /// Evaluates the trigonometric polynomial at an arbitrary angle.
    pub fn eval(&self, t: f64) -> Complex64 {
        let step = Complex64::from_polar(1.0, t);
        let mut pos = Complex64::new(1.0, 0.0);
        let mut acc = self.coeff(0);
        for n in 1..=self.n_max as i64 {
            pos *= step;
            acc += self.coeff(n) * pos + self.coeff(-n) * pos.conj();
        }
        acc
    }
}

/// `e^{2πiq/m}` for `q = 0..m`.
pub(crate) fn roots_of_unity(m: usize) -> Vec<Complex64> {
    (0..m).map(|q| Complex64::from_polar(1.0, 2.0 * PI * q as f64 / m as f64)).collect()
}

/// Uniform grid angles `t_j = 2πj/m`.
pub fn grid_angles(m: usize) -> Vec<f64> {
    (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).collect()
}

/// Discrete Fourier coefficients of uniform samples, `|n| ≤ ⌊(m−1)/2⌋`.
pub fn analyze(samples: &[Complex64]) -> Result<FourierSeries> {
    let m = samples.len();
    if m < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 samples, got {m}")));
    }
    let n_max = (m - 1) / 2;
    let roots = roots_of_unity(m);
    let inv_m = 1.0 / m as f64;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * n_max + 1];
    for n in -(n_max as i64)..=n_max as i64 {
        // e^{-int_j} = roots[(-n j) mod m]
        let step = (-n).rem_euclid(m as i64) as usize;
        let mut idx = 0usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for &f in samples {
            acc += f * roots[idx];
            idx += step;
            if idx >= m {
                idx -= m;
            }
        }
        coeffs[(n + n_max as i64) as usize] = acc * inv_m;
    }
    Ok(FourierSeries { n_max, coeffs, grid_size: m })
}

/// [`analyze`] for real samples.
pub fn analyze_real(samples: &[f64]) -> Result<FourierSeries> {
    let z: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    analyze(&z)
}

/// [`analyze`] for explicitly tagged samples; rejects angles off the uniform grid.
pub fn analyze_at(angles: &[f64], samples: &[Complex64]) -> Result<FourierSeries> {
    if angles.len() != samples.len() {
        return Err(Error::InvalidInput("angle and sample counts differ".into()));
    }
    let m = angles.len();
    for (j, &t) in angles.iter().enumerate() {
        let expected = 2.0 * PI * j as f64 / m.max(1) as f64;
        if (t - expected).abs() > 1e-12 * (1.0 + expected) {
            return Err(Error::InvalidInput(format!(
                "sample {j} at angle {t} is not on the uniform grid (expected {expected})"
            )));
        }
    }
    analyze(samples)
}

/// Pointwise values `Σ f̂(n) e^{int_j}` on an `m`-point grid.
pub fn synthesize(series: &FourierSeries, m: usize) -> Result<Vec<Complex64>> {
    let band = series.bandwidth(0.0);
    if m < 2 * band + 1 {
        return Err(Error::Aliasing { required: 2 * band + 1, grid: m });
    }
    let roots = roots_of_unity(m);
    let mut out = vec![series.coeff(0); m];
    for n in 1..=band as i64 {
        let cp = series.coeff(n);
        let cm = series.coeff(-n);
        if cp == Complex64::new(0.0, 0.0) && cm == Complex64::new(0.0, 0.0) {
            continue;
        }
        let step = n as usize % m;
        let mut idx = 0usize;
        for v in out.iter_mut() {
            let e = roots[idx];
            *v += cp * e + cm * e.conj();
            idx += step;
            if idx >= m {
                idx -= m;
            }
        }
    }
    Ok(out)
}

/// Real parts of [`synthesize`].
pub fn synthesize_real(series: &FourierSeries, m: usize) -> Result<Vec<f64>> {
    Ok(synthesize(series, m)?.into_iter().map(|z| z.re).collect())
}

/// `(Σ_{n≠0} |n|^{2s} |f̂(n)|²)^{1/2}`.
pub fn sobolev_norm(series: &FourierSeries, s: f64) -> f64 {
    let mut acc = 0.0;
    for n in 1..=series.n_max() as i64 {
        let w = (n as f64).powf(2.0 * s);
        acc += w * (series.coeff(n).norm_sqr() + series.coeff(-n).norm_sqr());
    }
    acc.sqrt()
}

/// Harmonic extension `Σ f̂(n) r^{|n|} e^{int}` at `re^{it}`.
pub fn harmonic_extend(series: &FourierSeries, r: f64, t: f64) -> Result<Complex64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::OutOfDomain(format!("radius {r} not in [0, 1)")));
    }
    let step = Complex64::from_polar(r, t);
    let mut pos = Complex64::new(1.0, 0.0);
    let mut acc = series.coeff(0);
    for n in 1..=series.n_max() as i64 {
        pos *= step;
        // pos = r^n e^{int}; the negative mode needs r^n e^{-int}
        acc += series.coeff(n) * pos + series.coeff(-n) * pos.conj();
    }
    Ok(acc)
}

/// Boundary conjugate function: `f̂(n) ↦ −i·sign(n)·f̂(n)`, mean set to zero.
pub fn conjugate(series: &FourierSeries) -> FourierSeries {
    let minus_i = Complex64::new(0.0, -1.0);
    series.map_coeffs(|n, c| match n.signum() {
        0 => Complex64::new(0.0, 0.0),
        s => minus_i * s as f64 * c,
    })
}

/// Grid estimate of `[f]_{C^{0,α}}` with arc-length distances; a lower bound
/// of the true seminorm.
pub fn holder_seminorm(samples: &[f64], alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidInput(format!("Hölder exponent {alpha} not in (0, 1]")));
    }
    let m = samples.len();
    if m < 2 {
        return Err(Error::InvalidInput("need at least 2 samples".into()));
    }
    let h = 2.0 * PI / m as f64;
    if alpha == 1.0 {
        // Arc length is additive along the shorter arc, so adjacent pairs attain the max.
        let best = (0..m)
            .map(|j| (samples[(j + 1) % m] - samples[j]).abs() / h)
            .fold(0.0, f64::max);
        return Ok(best);
    }
    let mut best = 0.0f64;
    for i in 0..m {
        for j in i + 1..m {
            let gap = (j - i).min(m - (j - i)) as f64 * h;
            best = best.max((samples[i] - samples[j]).abs() / gap.powf(alpha));
        }
    }
    Ok(best)
}
