//! Seeded random boundary weights for property sweeps.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::disk::{deficit, BoundaryWeight};
use crate::error::{Error, Result};
use crate::fourier::{self, FourierSeries};

/// Distribution of `Θ = 1 + h` with `h` a random real trigonometric
/// polynomial supported on modes `first_mode..=B`, `B` uniform in
/// `[first_mode, max_bandwidth]`, amplitudes decaying like `n^{−p}` with
/// `p ∈ [0.5, 2]`, rescaled so that `sup|h| = δ` with `δ` log-uniform in
/// `delta_range`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSampler {
    pub first_mode: usize,
    pub max_bandwidth: usize,
    pub delta_range: (f64, f64),
    pub grid: usize,
}

/// One draw of a [`WeightSampler`].
#[derive(Debug, Clone)]
pub struct Sample {
    pub weight: BoundaryWeight,
    pub bandwidth: usize,
    /// `sup|Θ − 1|` on the grid.
    pub delta: f64,
}

impl WeightSampler {
    /// Normalized weights: `Θ̂(0) = 1`, `Θ̂(±1) = 0`, bandwidth ≤ 32.
    pub fn normalized(grid: usize) -> Self {
        Self { first_mode: 2, max_bandwidth: 32, delta_range: (0.005, 0.8), grid }
    }

    /// Weights with `sup|Θ − 1| ≤ bound`, all modes from 1 allowed.
    pub fn near_one(bound: f64, grid: usize) -> Self {
        Self { first_mode: 1, max_bandwidth: 32, delta_range: (bound * 1e-2, bound), grid }
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.delta_range;
        if self.first_mode == 0 || self.max_bandwidth < self.first_mode {
            return Err(Error::InvalidInput("empty mode range".into()));
        }
        if !(lo > 0.0 && lo <= hi && hi < 1.0) {
            return Err(Error::InvalidInput(format!("deviation range ({lo}, {hi}) must lie in (0, 1)")));
        }
        if 2 * self.max_bandwidth + 1 > self.grid {
            return Err(Error::Aliasing { required: 2 * self.max_bandwidth + 1, grid: self.grid });
        }
        Ok(())
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Result<Sample> {
        self.validate()?;
        let bandwidth = rng.gen_range(self.first_mode..=self.max_bandwidth);
        let decay: f64 = rng.gen_range(0.5..=2.0);
        let mut modes = Vec::with_capacity(2 * bandwidth);
        for n in self.first_mode..=bandwidth {
            let c = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)) * (n as f64).powf(-decay);
            modes.push((n as i64, c));
            modes.push((-(n as i64), c.conj()));
        }
        let (lo, hi) = self.delta_range;
        let delta = (lo.ln() + rng.gen::<f64>() * (hi.ln() - lo.ln())).exp();
        let h = fourier::synthesize_real(&FourierSeries::from_modes(&modes, self.grid), self.grid)?;
        let sup = h.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let weight = BoundaryWeight::from_samples(h.iter().map(|v| 1.0 + delta * v / sup).collect())?;
        let delta = weight.sup_distance(1.0);
        Ok(Sample { weight, bandwidth, delta })
    }

    /// `count` draws from a generator seeded with `seed`.
    pub fn draw(&self, seed: u64, count: usize) -> Result<Vec<Sample>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.sample(&mut rng)).collect()
    }
}

/// Normalized weights with deficit at most 1, drawn in seeded batches until
/// `count` are accepted. Returns each weight with its deficit.
pub fn stability_ensemble(seed: u64, count: usize, grid: usize) -> Result<Vec<(Sample, f64)>> {
    let sampler = WeightSampler::normalized(grid);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted = Vec::with_capacity(count);
    let mut drawn = 0;
    while accepted.len() < count {
        if drawn >= 20 * count.max(10) {
            return Err(Error::NotConverged {
                what: format!("ensemble filling ({} of {count} accepted)", accepted.len()),
                residual: drawn as f64,
            });
        }
        let batch = (0..count - accepted.len()).map(|_| sampler.sample(&mut rng)).collect::<Result<Vec<_>>>()?;
        drawn += batch.len();
        let scored = batch
            .into_par_iter()
            .map(|s| deficit(&s.weight).map(|d| (s, d)))
            .collect::<Result<Vec<_>>>()?;
        accepted.extend(scored.into_iter().filter(|(_, d)| *d <= 1.0));
    }
    Ok(accepted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_samples_have_the_advertised_shape() {
        let draws = WeightSampler::normalized(256).draw(7, 40).unwrap();
        for s in &draws {
            let w = &s.weight;
            assert!((w.coeff(0).re - 1.0).abs() < 1e-14);
            assert!(w.coeff(1).norm() < 1e-14);
            assert!(w.bandwidth() <= 32 && s.bandwidth >= 2);
            assert!(s.delta >= 0.005 * (1.0 - 1e-12) && s.delta <= 0.8 * (1.0 + 1e-12));
        }
    }

    #[test]
    fn draws_are_reproducible() {
        let sampler = WeightSampler::near_one(0.1, 128);
        let a = sampler.draw(3, 5).unwrap();
        let b = sampler.draw(3, 5).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.weight.samples(), y.weight.samples());
        }
        assert_ne!(a[0].weight.samples(), sampler.draw(4, 1).unwrap()[0].weight.samples());
    }
}
