//! Recovers the conformal map whose derivative has a prescribed boundary
//! modulus, then measures the image domain.

use num_complex::Complex64;
use steklov::conformal::{apriori_norm, boundary_curve, hausdorff_to_disk, perimeter, reconstruct, univalence_margin};
use steklov::disk::BoundaryWeight;

fn main() -> steklov::Result<()> {
    // |g′| for g′ = 1 + 0.3 z⁴, i.e. g = z + 0.06 z⁵
    let weight = BoundaryWeight::from_fn(1024, |t| (Complex64::new(1.0, 0.0) + Complex64::from_polar(0.3, 4.0 * t)).norm())?;
    let map = reconstruct(&weight, 256)?;
    for (k, c) in map.map_coeffs().iter().enumerate().take(7) {
        println!("a_{k} = {:+.10}", c);
    }
    println!("truncation tail {:.3e}", map.truncation_tail());
    println!("perimeter {:.10} (2π·mean Θ = {:.10})", perimeter(&map), 2.0 * std::f64::consts::PI * weight.mean());
    println!("univalence margin {:.6} (≤ 1 certifies injectivity)", univalence_margin(&map));
    println!("‖log|g′|‖ in C^(0,1): {:.6}", apriori_norm(&map, 1.0)?);
    let curve = boundary_curve(&map, 1024)?;
    println!("Hausdorff distance to a unit disk: {:.6}", hausdorff_to_disk(&curve)?);
    Ok(())
}
