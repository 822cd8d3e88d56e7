//! Weights 1 + a_n cos(nt) with a_n = n^(-(1-ε)/ε): deficit against the
//! Hausdorff asymmetry of the reconstructed domain.

use num_complex::Complex64;
use steklov::conformal::{boundary_curve, hausdorff_to_disk, reconstruct};
use steklov::constructions::sharpness_weight;
use steklov::disk::deficit;

fn main() -> steklov::Result<()> {
    let eps = 0.5;
    println!("{:>4} {:>10} {:>12} {:>12} {:>12} {:>10}", "n", "a_n", "deficit", "bound", "d_H", "ratio");
    for n in [8, 16, 32, 64] {
        let s = sharpness_weight(n, eps, 1024)?;
        let d = deficit(&s.weight)?;
        let map = reconstruct(&s.weight, s.weight.series().n_max())?;
        let dh = hausdorff_to_disk(&boundary_curve(&map, s.weight.grid_size())?)?;
        println!(
            "{n:>4} {:>10.6} {d:>12.4e} {:>12.4e} {dh:>12.4e} {:>10.4}",
            s.a_n,
            s.deficit_bound,
            d / dh.powf(2.0 - eps)
        );
        println!("      g_n(1) = {:.10}", map.eval(Complex64::new(1.0, 0.0)).re);
    }
    Ok(())
}
