use crate::disk::BoundaryWeight;
use crate::error::{Error, Result};

/// `Θ_n = 1 + a_n cos(nt)`, `a_n = n^{−(1−ε)/ε}`, with its predicted markers.
#[derive(Debug, Clone)]
pub struct SharpnessWeight {
    pub weight: BoundaryWeight,
    pub n: usize,
    pub a_n: f64,
    /// Upper bracket `a_n²/(n−3)` for the deficit.
    pub deficit_bound: f64,
    /// Scale `a_n/n` of the asymmetry of the reconstructed domain.
    pub hausdorff_proxy: f64,
}

/// Builds `Θ_n` on a grid of `max(grid, 16n)` points.
pub fn sharpness_weight(n: usize, eps: f64, grid: usize) -> Result<SharpnessWeight> {
    if n < 4 {
        return Err(Error::InvalidInput(format!("order n = {n} must be at least 4")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidInput(format!("exponent parameter {eps} not in (0, 1)")));
    }
    let a_n = (n as f64).powf(-(1.0 - eps) / eps);
    if !(a_n < 1.0) {
        return Err(Error::InvalidInput(format!("a_n = {a_n} must be below 1")));
    }
    let weight = BoundaryWeight::from_fn(grid.max(16 * n), |t| 1.0 + a_n * (n as f64 * t).cos())?;
    Ok(SharpnessWeight {
        weight,
        n,
        a_n,
        deficit_bound: a_n * a_n / (n as f64 - 3.0),
        hausdorff_proxy: a_n / n as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_for_a_n() {
        let s = sharpness_weight(16, 0.5, 1024).unwrap();
        assert!((s.a_n - 0.0625).abs() < 1e-15);
        assert!((s.weight.coeff(16).re - 0.03125).abs() < 1e-14);
        assert!((s.deficit_bound - 0.0625f64.powi(2) / 13.0).abs() < 1e-16);
        assert!(sharpness_weight(3, 0.5, 1024).is_err());
        assert!(sharpness_weight(8, 1.0, 1024).is_err());
    }
}
