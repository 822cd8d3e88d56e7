//! Deficit of 1 + α cos(Nt) against the upper bracket α²/(N − 3) and the
//! scaled quantity N·deficit/α².

use steklov::disk::{deficit, BoundaryWeight};

fn main() -> steklov::Result<()> {
    println!("{:>6} {:>4} {:>14} {:>14} {:>10}", "alpha", "N", "deficit", "alpha^2/(N-3)", "scaled");
    for alpha in [0.05, 0.2, 0.4] {
        for n in [4usize, 8, 16, 32, 64] {
            let w = BoundaryWeight::from_fn(1024.max(16 * n), |t| 1.0 + alpha * (n as f64 * t).cos())?;
            let d = deficit(&w)?;
            println!(
                "{alpha:>6} {n:>4} {d:>14.6e} {:>14.6e} {:>10.5}",
                alpha * alpha / (n as f64 - 3.0),
                n as f64 * d / (alpha * alpha)
            );
        }
    }
    Ok(())
}
