//! Möbius pullback of a weight and the centring that kills its first
//! Fourier coefficient; eigenvalues are unchanged.

use num_complex::Complex64;
use steklov::disk::{center_radius_bound, converged_eigenvalues, mobius_pullback, normalize_center, BoundaryWeight};

fn main() -> steklov::Result<()> {
    let w = BoundaryWeight::from_fn(1024, |t| 1.0 + 0.4 * t.cos() + 0.2 * (3.0 * t).sin())?;
    let (sigma, _) = converged_eigenvalues(&w, 3, 64, 1e-10)?;
    println!("Θ̂(1) = {:.6}, σ_1..3 = {:.10?}", w.coeff(1), &sigma[1..]);

    let moved = mobius_pullback(&w, Complex64::new(0.2, -0.1))?;
    let (sigma_moved, _) = converged_eigenvalues(&moved, 3, 64, 1e-10)?;
    println!("after a pullback: σ_1..3 = {:.10?}", &sigma_moved[1..]);

    let (centred, zeta) = normalize_center(&w)?;
    println!("centring point ζ = {zeta:.8}, |Θ̂_ζ(1)| = {:.2e}", centred.coeff(1).norm());
    let k = w.log_sup_norm();
    println!("|ζ| = {:.6} ≤ r(K) = {:.6} for K = ‖log Θ‖∞ = {k:.6}", zeta.norm(), center_radius_bound(k));
    Ok(())
}
