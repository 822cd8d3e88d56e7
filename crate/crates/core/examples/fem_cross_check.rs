//! Compares the finite element spectrum of g(D), g(z) = z + 0.06 z⁵, with the
//! weighted disk spectrum for Θ = |g′|.

use num_complex::Complex64;
use steklov::conformal::{boundary_curve, ConformalMap};
use steklov::constructions::StarBoundary;
use steklov::disk::converged_eigenvalues;
use steklov::fem::{richardson, steklov_eigenvalues};

fn main() -> steklov::Result<()> {
    let zero = Complex64::new(0.0, 0.0);
    let g = ConformalMap::from_map_coeffs(vec![zero, Complex64::new(1.0, 0.0), zero, zero, zero, Complex64::new(0.06, 0.0)])?;
    let (disk, modes) = converged_eigenvalues(&g.boundary_weight(1024)?, 2, 64, 1e-10)?;
    println!("disk solver: sigma_1 = {:.10} sigma_2 = {:.10} ({modes} modes)", disk[1], disk[2]);

    let mut ladder = Vec::new();
    for (rings, sectors) in [(8, 128), (16, 256), (32, 512)] {
        let boundary = StarBoundary::polyline(boundary_curve(&g, sectors)?)?;
        let sigma = steklov_eigenvalues(&boundary, rings, sectors, 2)?;
        println!("mesh {rings:>2} x {sectors:>3}: sigma_1 = {:.10}", sigma[1]);
        ladder.push(sigma[1]);
    }
    let (extrapolated, order) = richardson(ladder[0], ladder[1], ladder[2]);
    println!("Richardson: {extrapolated:.10} (observed order {order:.2})");
    println!("relative difference: {:.3e}", (extrapolated - disk[1]).abs() / disk[1]);
    Ok(())
}
