//! Sawtooth boundaries Ω_ε over the unit disk whose arc-length measure
//! approaches Θ dσ, Θ = 1.2 + 0.1 cos 2t, and the resulting Steklov spectrum.

use steklov::constructions::{measure_pairing, oscillating_domain_with, OscillationOptions, StarBoundary, ToothProfile};
use steklov::disk::{converged_eigenvalues, BoundaryWeight};
use steklov::fem::steklov_eigenvalues;

fn main() -> steklov::Result<()> {
    let weight = BoundaryWeight::from_fn(256, |t| 1.2 + 0.1 * (2.0 * t).cos())?;
    let base = StarBoundary::circle(1.0, 256)?;
    let (sigma, _) = converged_eigenvalues(&weight, 1, 64, 1e-10)?;
    let target_perimeter = 2.0 * std::f64::consts::PI * 1.2;
    // ∫ Θ x² dσ over the unit circle
    let target_pairing = std::f64::consts::PI * (1.2 + 0.05);
    println!("weighted disk sigma_1 = {:.8}", sigma[1]);
    println!("{:>4} {:>12} {:>12} {:>12} {:>12}", "k", "perimeter", "pairing", "fem sigma_1", "error");
    for k in [8, 16, 32] {
        let options = OscillationOptions { samples_per_tooth: 16, profile: ToothProfile::Smoothed };
        let domain = oscillating_domain_with(&base, &weight, k, options)?;
        let pairing = measure_pairing(&domain, |x, _| x * x);
        let fem = steklov_eigenvalues(&domain, 16, 512, 1)?;
        println!(
            "{k:>4} {:>12.6} {:>12.6} {:>12.6} {:>12.3e}",
            domain.perimeter() / target_perimeter,
            pairing / target_pairing,
            fem[1],
            (fem[1] - sigma[1]).abs()
        );
    }
    Ok(())
}
