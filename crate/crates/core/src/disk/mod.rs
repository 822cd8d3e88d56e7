//! Weighted Steklov spectrum of the unit disk, `Δu = 0` in `D`,
//! `∂_ν u = σ Θ u` on `∂D`, via Fourier–Galerkin truncation.

mod galerkin;
mod weight;

pub use galerkin::{
    assemble, converged_eigenvalues, default_modes, deficit, solve_spectrum, GalerkinSystem,
    WeightedSpectrum,
};
pub use weight::{
    center_radius_bound, hminus_half_distance, mobius_pullback, normalize_center, normalize_mean,
    BoundaryWeight, DEFAULT_GRID,
};
