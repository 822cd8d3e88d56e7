//! Oscillatory perturbations g_n = g + z^(n+1) f/(n+1) of the identity:
//! the normalized first eigenvalue tends to the disk value while the
//! boundary derivative keeps oscillating.

use std::f64::consts::PI;

use steklov::conformal::{perimeter, ConformalMap};
use steklov::constructions::{instability_map, p_function};
use steklov::disk::{converged_eigenvalues, default_modes};

fn main() -> steklov::Result<()> {
    println!("P(0) = {:.12}, P(1) = {:.12} (4/π = {:.12})", p_function(0.0), p_function(1.0), 4.0 / PI);
    let base = ConformalMap::identity();
    println!("{:>4} {:>12} {:>14} {:>12}", "n", "perimeter", "|∂Ω|σ_1/2π", "sup|log|g′||");
    for n in [4, 8, 16, 32, 64] {
        let out = instability_map(&base, n)?;
        let w = out.map.boundary_weight(out.map.resolved_grid(1e-10))?;
        let (sigma, _) = converged_eigenvalues(&w, 1, default_modes(&w), 1e-10)?;
        let p = perimeter(&out.map);
        let log_sup = w.samples().iter().fold(0.0f64, |a, v| a.max(v.ln().abs()));
        println!("{n:>4} {p:>12.8} {:>14.10} {log_sup:>12.6}", p * sigma[1] / (2.0 * PI));
    }
    Ok(())
}
