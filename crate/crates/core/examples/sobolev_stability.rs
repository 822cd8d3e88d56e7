//! Random normalized weights: the H^(-1/2) distance to 1 is controlled by
//! the deficit, and the sup distance by the H^(-1/2) distance.

use steklov::disk::hminus_half_distance;
use steklov::experiments::ensemble::stability_ensemble;
use steklov::fourier::holder_seminorm;

fn main() -> steklov::Result<()> {
    let members = stability_ensemble(2024, 40, 512)?;
    let (mut worst_h, mut worst_inf) = (0.0f64, 0.0f64);
    for (s, d) in &members {
        let h = hminus_half_distance(&s.weight);
        let ratio = h / (d * (2.0 + h * h)).sqrt();
        worst_h = worst_h.max(ratio);
        let lipschitz = s.weight.max_value() + holder_seminorm(s.weight.samples(), 1.0)?;
        if lipschitz <= 2.0 {
            worst_inf = worst_inf.max(s.delta / h.sqrt());
        }
    }
    println!("{} weights", members.len());
    println!("max ‖Θ−1‖_(-1/2) / sqrt(deficit·(2+‖Θ−1‖²)) = {worst_h:.6} (bound 1+√2 = {:.6})", 1.0 + 2f64.sqrt());
    println!("max ‖Θ−1‖∞ / ‖Θ−1‖_(-1/2)^(1/2) over Lipschitz norm ≤ 2: {worst_inf:.6}");
    Ok(())
}
