//! Steklov spectrum of the disk with a boundary weight, including the
//! truncation ladder used to certify convergence.

use steklov::disk::{assemble, converged_eigenvalues, default_modes, solve_spectrum};
use steklov::parse::parse_weight;

fn main() -> steklov::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "1 + 0.3*cos(2*t) + 0.1*sin(5*t)".into());
    let weight = parse_weight(&spec, 1024)?;
    let start = default_modes(&weight);
    println!("weight {spec}: mean {:.6}, bandwidth {}", weight.mean(), weight.bandwidth());

    for n in [start / 4, start / 2, start] {
        let sigma = assemble(&weight, n)?.eigenvalues(4)?;
        println!("n_modes {n:>4}: {:.12?}", sigma);
    }
    let (sigma, n) = converged_eigenvalues(&weight, 6, start, 1e-10)?;
    println!("converged at {n} modes: {:.12?}", sigma);

    // Eigenfunctions are B-orthonormal boundary traces.
    let spectrum = solve_spectrum(&assemble(&weight, n)?, 2)?;
    println!("eigenvector matrix {} x {}", spectrum.eigenvectors.nrows(), spectrum.eigenvectors.ncols());
    println!("Weinstock product mean(Θ)·σ_1 = {:.12} (≤ 1)", weight.mean() * sigma[1]);
    Ok(())
}
