//! Sampling, coefficients, Sobolev norms, harmonic extension and the
//! conjugate function on the unit circle.

use steklov::fourier::{analyze_real, conjugate, harmonic_extend, holder_seminorm, sobolev_norm, synthesize_real};

fn main() -> steklov::Result<()> {
    let m = 256;
    let samples: Vec<f64> = steklov::fourier::grid_angles(m)
        .iter()
        .map(|t| 1.0 + 0.5 * (3.0 * t).cos() + 0.25 * (5.0 * t).sin())
        .collect();
    let series = analyze_real(&samples)?;
    for n in [0, 3, 5] {
        println!("coefficient {n}: {:.6}", series.coeff(n));
    }
    println!("H^(1/2) seminorm:  {:.6}", sobolev_norm(&series, 0.5));
    println!("H^(-1/2) seminorm: {:.6}", sobolev_norm(&series, -0.5));
    println!("harmonic extension at r = 0.5, t = 0: {:.6}", harmonic_extend(&series, 0.5, 0.0)?.re);
    let conj = synthesize_real(&conjugate(&series), m)?;
    println!("conjugate at t = 0: {:.6} (exact: -0.25)", conj[0]);
    println!("Lipschitz seminorm on the grid: {:.6}", holder_seminorm(&samples, 1.0)?);
    Ok(())
}
