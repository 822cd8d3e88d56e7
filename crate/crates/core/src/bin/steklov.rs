use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use steklov::experiments::{self, Command, ExperimentConfig};

#[derive(Parser)]
#[command(name = "steklov", version, about = "Weighted Steklov eigenvalue experiments on the disk")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weighted eigenvalues with a truncation ladder
    Spectrum(Opts),
    /// Deficit of 1 + α cos(Nt) against its brackets
    DeficitSweep(Opts),
    /// Random normalized weights: deficit against Sobolev, sup and Hausdorff distances
    Stability(Opts),
    /// Conformal map with prescribed boundary modulus of its derivative
    Reconstruct(Opts),
    /// Sawtooth boundaries: perimeter, measure pairing and finite element σ_1
    Homogenize(Opts),
    /// Oscillatory perturbations g_n: normalized σ_1·perimeter
    Instability(Opts),
    /// Weights 1 + a_n cos(nt): deficit against Hausdorff asymmetry
    Sharpness(Opts),
}

#[derive(Args)]
struct Opts {
    /// Expression such as "1 + 0.2*cos(8*t)" or a coefficient CSV (n,re,im)
    #[arg(long)]
    weight: Option<String>,
    #[arg(long)]
    n_modes: Option<usize>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
    /// Comma-separated amplitudes, or the Hölder exponent
    #[arg(long)]
    alpha: Option<String>,
    /// Ladder such as N=4..64 (doubling) or 4,8,16
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long)]
    eps: Option<f64>,
    /// Comma-separated tooth counts or a doubling range
    #[arg(long)]
    teeth: Option<String>,
    /// rings,sectors
    #[arg(long)]
    mesh: Option<String>,
    /// Ensemble size for stability
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    tol: Option<f64>,
}

fn config(command: Command, o: Opts) -> steklov::Result<ExperimentConfig> {
    let mut c = ExperimentConfig::new(command);
    if let Some(w) = o.weight {
        c.weight = w;
    }
    c.n_modes = o.n_modes.or(c.n_modes);
    c.grid = o.grid.unwrap_or(c.grid);
    c.k_max = o.k_max.unwrap_or(c.k_max);
    if let Some(a) = o.alpha {
        c.alpha = experiments::parse_reals(&a)?;
    }
    if let Some(s) = o.sweep {
        c.sweep = experiments::parse_sweep(&s)?;
    }
    c.eps = o.eps.unwrap_or(c.eps);
    if let Some(t) = o.teeth {
        c.teeth = experiments::parse_sweep(&t)?;
    }
    if let Some(m) = o.mesh {
        c.mesh = experiments::parse_mesh(&m)?;
    }
    c.samples = o.samples.unwrap_or(c.samples);
    c.out = o.out;
    c.seed = o.seed;
    c.tol = o.tol.unwrap_or(c.tol);
    Ok(c)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match cli.command {
        Cmd::Spectrum(o) => (Command::Spectrum, o),
        Cmd::DeficitSweep(o) => (Command::DeficitSweep, o),
        Cmd::Stability(o) => (Command::Stability, o),
        Cmd::Reconstruct(o) => (Command::Reconstruct, o),
        Cmd::Homogenize(o) => (Command::Homogenize, o),
        Cmd::Instability(o) => (Command::Instability, o),
        Cmd::Sharpness(o) => (Command::Sharpness, o),
    };
    let out = opts.out.clone();
    let cfg = match config(command, opts) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = experiments::run(&cfg);
    let code = experiments::exit_code(&outcome);
    match &outcome {
        Ok(report) => {
            for a in &report.assertions {
                println!("{} {}: {}", if a.passed { "PASS" } else { "FAIL" }, a.name, a.detail);
            }
            match report.write(&cfg, &out) {
                Ok(paths) => paths.iter().for_each(|p| println!("wrote {}", p.display())),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            let record = experiments::error_record(&cfg, e);
            let written = std::fs::create_dir_all(&out).and_then(|_| {
                std::fs::write(out.join(format!("{command}.json")), serde_json::to_string_pretty(&record).unwrap_or_default())
            });
            if let Err(w) = written {
                eprintln!("error: could not write error record: {w}");
            }
        }
    }
    ExitCode::from(code as u8)
}
