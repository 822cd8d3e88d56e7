use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::weight::{BoundaryWeight, COEFF_REL_TOL};
use crate::error::{Error, Result};
use crate::linalg::hermitian_pencil;

/// Fourier–Galerkin discretization of the weighted Steklov problem on the
/// disk over the modes `e^{int}`, `|n| ≤ n_modes`.
///
/// The energy form is `2π|n|` on the diagonal and the mass form is the
/// Toeplitz matrix `M[k, l] = 2π Θ̂(k − l)`, so that `cᴴ M c = ∫ Θ |u|²`.
/// Only the symbol `Θ̂(d)`, `|d| ≤ 2·n_modes`, is stored.
///
/// When the weight's frequencies share a common divisor `g`, modes in
/// different residue classes mod `g` decouple, and the pencil is solved
/// block by block.
#[derive(Debug, Clone)]
pub struct GalerkinSystem {
    n_modes: usize,
    symbol: Vec<Complex64>,
    period: usize,
    symbol_l1: f64,
    real: bool,
}

/// Eigenvalues of the truncated pencil with their eigenvectors.
#[derive(Debug, Clone)]
pub struct WeightedSpectrum {
    /// `σ_0 ≤ σ_1 ≤ … ≤ σ_kmax`.
    pub eigenvalues: Vec<f64>,
    /// Column `k` holds the coefficients of the `k`-th eigenfunction over
    /// modes `−n_modes..=n_modes`, normalized in the mass inner product.
    pub eigenvectors: DMatrix<Complex64>,
    pub n_modes: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Assembles the Galerkin pencil for `weight` truncated at `n_modes`.
pub fn assemble(weight: &BoundaryWeight, n_modes: usize) -> Result<GalerkinSystem> {
    if n_modes < 2 {
        return Err(Error::InvalidInput(format!("n_modes must be at least 2, got {n_modes}")));
    }
    if weight.min_value() <= 0.0 {
        return Err(Error::NonPositiveWeight { min: weight.min_value() });
    }
    let span = 2 * n_modes as i64;
    let symbol: Vec<Complex64> = (-span..=span).map(|d| weight.coeff(d)).collect();
    let scale = weight.mean().abs();
    let tol = COEFF_REL_TOL * scale;
    let mut g = 0usize;
    let mut real = true;
    for d in 1..=span {
        let c = weight.coeff(d);
        if c.norm() > tol {
            g = gcd(g, d as usize);
        }
        if c.im.abs() > 1e-15 * scale {
            real = false;
        }
    }
    let cap = 2 * n_modes + 1;
    let period = if g == 0 { cap } else { g.min(cap) };
    let symbol_l1 = symbol.iter().map(|c| c.norm()).sum();
    Ok(GalerkinSystem { n_modes, symbol, period, symbol_l1, real })
}

impl GalerkinSystem {
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Number of Fourier modes, `2·n_modes + 1`.
    pub fn dim(&self) -> usize {
        2 * self.n_modes + 1
    }

    /// Common period of the weight's frequencies (decoupling modulus).
    pub fn period(&self) -> usize {
        self.period
    }

    fn theta(&self, d: i64) -> Complex64 {
        self.symbol[(d + 2 * self.n_modes as i64) as usize]
    }

    /// Mode indices in matrix order.
    pub fn modes(&self) -> Vec<i64> {
        let n = self.n_modes as i64;
        (-n..=n).collect()
    }

    /// Energy entry `2π|n|` for mode `n`.
    pub fn energy_entry(&self, n: i64) -> f64 {
        2.0 * PI * n.unsigned_abs() as f64
    }

    /// Mass entry between modes `k` and `l`: `2π Θ̂(k − l)`.
    pub fn mass_entry(&self, k: i64, l: i64) -> Complex64 {
        self.theta(k - l) * (2.0 * PI)
    }

    pub fn energy_dense(&self) -> DMatrix<Complex64> {
        let diag: Vec<Complex64> =
            self.modes().iter().map(|&n| Complex64::new(self.energy_entry(n), 0.0)).collect();
        DMatrix::from_diagonal(&DVector::from_vec(diag))
    }

    pub fn mass_dense(&self) -> DMatrix<Complex64> {
        let modes = self.modes();
        DMatrix::from_fn(modes.len(), modes.len(), |i, j| self.mass_entry(modes[i], modes[j]))
    }

    /// Modes `n ≡ r (mod period)` within the truncation.
    fn block_modes(&self, r: usize) -> Vec<i64> {
        let n = self.n_modes as i64;
        let g = self.period as i64;
        (-n..=n).filter(|m| m.rem_euclid(g) == r as i64).collect()
    }

    /// Eigenpairs of one residue block, in the block's own mode order.
    fn solve_block(&self, modes: &[i64], want_vectors: bool) -> Result<(Vec<f64>, Option<DMatrix<Complex64>>)> {
        let b = modes.len();
        let energy = |i: usize| modes[i].unsigned_abs() as f64;
        if self.real {
            let a = DMatrix::from_fn(b, b, |i, j| if i == j { energy(i) } else { 0.0 });
            let m = DMatrix::from_fn(b, b, |i, j| self.theta(modes[i] - modes[j]).re);
            let e = hermitian_pencil(&a, m, want_vectors)?;
            let vecs = e.vectors.map(|v| v.map(|x| Complex64::new(x, 0.0) / (2.0 * PI).sqrt()));
            Ok((e.values, vecs))
        } else {
            let a = DMatrix::from_fn(b, b, |i, j| Complex64::new(if i == j { energy(i) } else { 0.0 }, 0.0));
            let m = DMatrix::from_fn(b, b, |i, j| self.theta(modes[i] - modes[j]));
            let e = hermitian_pencil(&a, m, want_vectors)?;
            let vecs = e.vectors.map(|v| v / Complex64::new((2.0 * PI).sqrt(), 0.0));
            Ok((e.values, vecs))
        }
    }

    /// Runs the blocks in order of increasing distance from the zero mode and
    /// stops once no unvisited block can hold one of the `k_max + 1` smallest
    /// eigenvalues. Every eigenvalue of a block whose modes satisfy `|n| ≥ d`
    /// is at least `d / Σ|Θ̂|`.
    fn collect(&self, k_max: usize, want_vectors: bool) -> Result<Vec<(f64, Option<DVector<Complex64>>)>> {
        if k_max > 2 * self.n_modes {
            return Err(Error::InvalidInput(format!(
                "k_max = {k_max} exceeds 2·n_modes = {}",
                2 * self.n_modes
            )));
        }
        let g = self.period;
        let mut blocks: Vec<(Vec<i64>, Option<DMatrix<Complex64>>)> = Vec::new();
        // (value, block slot, column, conjugate copy)
        let mut found: Vec<(f64, usize, usize, bool)> = Vec::new();
        for d in 0..=g / 2 {
            let modes = self.block_modes(d);
            let (values, vectors) = self.solve_block(&modes, want_vectors)?;
            let slot = blocks.len();
            let paired = d != 0 && 2 * d != g;
            for (idx, &v) in values.iter().enumerate() {
                found.push((v, slot, idx, false));
                if paired {
                    found.push((v, slot, idx, true));
                }
            }
            blocks.push((modes, vectors));
            found.sort_by(|a, b| a.0.total_cmp(&b.0));
            found.truncate(k_max + 1);
            let next_bound = (d + 1) as f64 / self.symbol_l1;
            if found.len() == k_max + 1 && found[k_max].0 <= next_bound {
                break;
            }
        }
        let dim = self.dim();
        let offset = self.n_modes as i64;
        let found = found
            .into_iter()
            .map(|(v, slot, idx, conj)| {
                let (modes, vectors) = &blocks[slot];
                let embedded = vectors.as_ref().map(|vs| {
                    let mut full = DVector::zeros(dim);
                    for (i, &n) in modes.iter().enumerate() {
                        let c = vs[(i, idx)];
                        if conj {
                            full[(offset - n) as usize] = c.conj();
                        } else {
                            full[(n + offset) as usize] = c;
                        }
                    }
                    full
                });
                (v, embedded)
            })
            .collect();
        Ok(found)
    }

    /// The `k_max + 1` smallest eigenvalues of the pencil.
    pub fn eigenvalues(&self, k_max: usize) -> Result<Vec<f64>> {
        Ok(self.collect(k_max, false)?.into_iter().map(|(v, _)| clamp_zero(v)).collect())
    }
}

fn clamp_zero(v: f64) -> f64 {
    if v.abs() < 1e-13 {
        0.0
    } else {
        v
    }
}

/// Eigenvalues `σ_0..=σ_kmax` and mass-orthonormal eigenvectors of the pencil.
pub fn solve_spectrum(system: &GalerkinSystem, k_max: usize) -> Result<WeightedSpectrum> {
    let pairs = system.collect(k_max, true)?;
    let dim = system.dim();
    let mut eigenvectors = DMatrix::zeros(dim, pairs.len());
    let mut eigenvalues = Vec::with_capacity(pairs.len());
    for (k, (v, vec)) in pairs.into_iter().enumerate() {
        eigenvalues.push(clamp_zero(v));
        eigenvectors.set_column(k, &vec.expect("vectors requested"));
    }
    Ok(WeightedSpectrum { eigenvalues, eigenvectors, n_modes: system.n_modes() })
}

/// Default truncation: `max(64, 4·bandwidth(Θ))`.
pub fn default_modes(weight: &BoundaryWeight) -> usize {
    64.max(4 * weight.bandwidth())
}

/// Eigenvalues converged by doubling `n_modes` from `start` until successive
/// values of `σ_1..=σ_kmax` agree to `rel_tol`. Returns the values and the
/// final truncation.
pub fn converged_eigenvalues(
    weight: &BoundaryWeight,
    k_max: usize,
    start: usize,
    rel_tol: f64,
) -> Result<(Vec<f64>, usize)> {
    let mut n = start.max(2).max(k_max.div_ceil(2));
    let mut prev = assemble(weight, n)?.eigenvalues(k_max)?;
    let mut change = f64::INFINITY;
    for _ in 0..6 {
        n *= 2;
        let next = assemble(weight, n)?.eigenvalues(k_max)?;
        change = prev
            .iter()
            .zip(&next)
            .skip(1)
            .map(|(a, b)| (a - b).abs() / b.abs().max(1e-300))
            .fold(0.0, f64::max);
        prev = next;
        if change < rel_tol {
            return Ok((prev, n));
        }
    }
    Err(Error::NotConverged { what: "Galerkin truncation doubling".into(), residual: change })
}

/// `1/σ_1(D, Θ) − 1`, with `σ_1` converged to 1e−10 relative.
pub fn deficit(weight: &BoundaryWeight) -> Result<f64> {
    let (sigma, _) = converged_eigenvalues(weight, 1, default_modes(weight), 1e-10)?;
    Ok(1.0 / sigma[1] - 1.0)
}
