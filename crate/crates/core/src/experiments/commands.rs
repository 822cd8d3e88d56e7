use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

use super::ensemble::stability_ensemble;
use super::{Command, ExperimentConfig, Report, Table};
use crate::conformal::{self, boundary_curve, hausdorff_to_disk, reconstruct, univalence_margin, ConformalMap};
use crate::constructions::{
    instability_map, measure_pairing, oscillating_domain_with, sharpness_weight, OscillationOptions, StarBoundary,
    ToothProfile,
};
use crate::disk::{assemble, converged_eigenvalues, default_modes, deficit, hminus_half_distance, BoundaryWeight};
use crate::error::{Error, Result};
use crate::fem;
use crate::fourier;
use crate::parse::parse_weight;

fn num(x: f64) -> String {
    format!("{x:.12e}")
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

/// Runs one experiment. Sweep points are evaluated concurrently and
/// collected in sweep order.
pub fn run(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    match config.command {
        Command::Spectrum => spectrum(config),
        Command::DeficitSweep => deficit_sweep(config),
        Command::Stability => stability(config),
        Command::Reconstruct => reconstruct_cmd(config),
        Command::Homogenize => homogenize(config),
        Command::Instability => instability(config),
        Command::Sharpness => sharpness(config),
    }
}

fn spectrum(cfg: &ExperimentConfig) -> Result<Report> {
    let weight = parse_weight(&cfg.weight, cfg.grid)?;
    let mut n = cfg.n_modes.unwrap_or_else(|| default_modes(&weight)).max(2).max(cfg.k_max.div_ceil(2));
    let mut ladder = Table::new("convergence", &["n_modes", "sigma_1", "sigma_k_max", "max_rel_change"]);
    let mut prev: Option<Vec<f64>> = None;
    let mut change = f64::INFINITY;
    let mut values = Vec::new();
    for _ in 0..=6 {
        let next = assemble(&weight, n)?.eigenvalues(cfg.k_max)?;
        if let Some(p) = &prev {
            change = p
                .iter()
                .zip(&next)
                .skip(1)
                .map(|(a, b)| (a - b).abs() / b.abs().max(1e-300))
                .fold(0.0, f64::max);
        }
        ladder.push(vec![n.to_string(), num(next[1]), num(next[cfg.k_max]), num(change)]);
        values = next.clone();
        prev = Some(next);
        if change < cfg.tol {
            break;
        }
        n *= 2;
    }
    let mut table = Table::new("spectrum", &["k", "sigma"]);
    for (k, s) in values.iter().enumerate() {
        table.push(vec![k.to_string(), num(*s)]);
    }
    let mean = weight.mean();
    let mut report = Report::new(Command::Spectrum);
    report.result("eigenvalues", values.clone());
    report.result("n_modes", n);
    report.result("normalized_deficit", 1.0 / (values[1] * mean) - 1.0);
    report.assert("ladder_converged", change < cfg.tol, format!("last relative change {change:e}, tolerance {:e}", cfg.tol));
    report.assert("sigma_0_vanishes", values[0].abs() <= 1e-10, format!("sigma_0 = {:e}", values[0]));
    let product = values[1] * mean;
    report.assert("weinstock", product <= 1.0 + 1e-10, format!("mean(Θ)·sigma_1 = {product:.12}"));
    report.tables = vec![table, ladder];
    Ok(report)
}

fn deficit_sweep(cfg: &ExperimentConfig) -> Result<Report> {
    let points: Vec<(f64, usize)> = cfg.alpha.iter().flat_map(|&a| cfg.sweep.iter().map(move |&n| (a, n))).collect();
    let deficits = points
        .par_iter()
        .map(|&(a, n)| {
            let w = BoundaryWeight::from_fn(cfg.grid.max(16 * n), |t| 1.0 + a * (n as f64 * t).cos())?;
            deficit(&w)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut table = Table::new("deficit-sweep", &["alpha", "N", "deficit", "upper", "scaled", "within"]);
    let mut violations = 0;
    let mut c0 = f64::INFINITY;
    let mut c_max: f64 = 0.0;
    for (&(a, n), &d) in points.iter().zip(&deficits) {
        let upper = a * a / (n as f64 - 3.0);
        let scaled = n as f64 * d / (a * a);
        let within = d <= upper;
        violations += usize::from(!within);
        c0 = c0.min(scaled);
        c_max = c_max.max(scaled);
        table.push(vec![num(a), n.to_string(), num(d), num(upper), num(scaled), within.to_string()]);
    }
    let mut report = Report::new(Command::DeficitSweep);
    report.result("fitted_c0", c0);
    report.result("max_scaled", c_max);
    report.result("violations", violations);
    report.assert("upper_bracket", violations == 0, format!("{violations} of {} points exceed alpha²/(N−3)", points.len()));
    report.assert("lower_bracket", c0 > 0.0, format!("min N·deficit/alpha² = {c0:.6}"));
    report.tables = vec![table];
    Ok(report)
}

struct StabilityRow {
    bandwidth: usize,
    linf: f64,
    deficit: f64,
    hminus: f64,
    lipschitz: f64,
    margin: f64,
    map_linf: f64,
    hausdorff: Option<f64>,
}

fn stability(cfg: &ExperimentConfig) -> Result<Report> {
    let alpha = cfg.alpha[0];
    let exponent = 2.0 * (1.0 + 1.0 / alpha);
    let members = stability_ensemble(cfg.seed, cfg.samples, cfg.grid)?;
    let n_terms = cfg.n_modes.unwrap_or(cfg.grid / 4).min(cfg.grid / 2);
    let rows = members
        .par_iter()
        .map(|(s, d)| {
            let w = &s.weight;
            let hminus = hminus_half_distance(w);
            let lipschitz = w.max_value() + fourier::holder_seminorm(w.samples(), 1.0)?;
            let map = reconstruct(w, n_terms)?;
            let margin = univalence_margin(&map);
            let map_linf = map.boundary_deriv_abs(cfg.grid).iter().fold(0.0f64, |a, v| a.max((v - 1.0).abs()));
            let hausdorff = if margin <= 1.0 { Some(hausdorff_to_disk(&boundary_curve(&map, cfg.grid)?)?) } else { None };
            Ok(StabilityRow { bandwidth: s.bandwidth, linf: s.delta, deficit: *d, hminus, lipschitz, margin, map_linf, hausdorff })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut table = Table::new(
        "stability",
        &[
            "index", "bandwidth", "deficit", "hminus_half", "linf", "lipschitz_norm", "hminus_ratio", "linf_ratio",
            "univalence_margin", "hausdorff", "hausdorff_over_linf", "deficit_over_dh_power",
        ],
    );
    let bound = 1.0 + 2f64.sqrt();
    let (mut max_h, mut max_inf, mut subset, mut certified) = (0.0f64, 0.0f64, 0usize, 0usize);
    let (mut max_dh_ratio, mut min_power_ratio) = (0.0f64, f64::INFINITY);
    for (i, r) in rows.iter().enumerate() {
        let h_ratio = r.hminus / (r.deficit * (2.0 + r.hminus * r.hminus)).sqrt();
        let inf_ratio = r.linf / r.hminus.sqrt();
        max_h = max_h.max(h_ratio);
        if r.lipschitz <= 2.0 {
            subset += 1;
            max_inf = max_inf.max(inf_ratio);
        }
        let (dh, dh_ratio, power_ratio) = match r.hausdorff {
            Some(dh) => {
                certified += 1;
                let q = dh / r.map_linf;
                let p = r.deficit / dh.powf(exponent);
                max_dh_ratio = max_dh_ratio.max(q);
                min_power_ratio = min_power_ratio.min(p);
                (num(dh), num(q), num(p))
            }
            None => ("".into(), "".into(), "".into()),
        };
        table.push(vec![
            i.to_string(),
            r.bandwidth.to_string(),
            num(r.deficit),
            num(r.hminus),
            num(r.linf),
            num(r.lipschitz),
            num(h_ratio),
            num(inf_ratio),
            num(r.margin),
            dh,
            dh_ratio,
            power_ratio,
        ]);
    }
    let mut report = Report::new(Command::Stability);
    report.result("members", rows.len());
    report.result("max_hminus_ratio", max_h);
    report.result("lipschitz_subset", subset);
    report.result("max_linf_ratio", max_inf);
    report.result("certified_univalent", certified);
    report.result("max_hausdorff_over_linf", max_dh_ratio);
    report.result("exponent", exponent);
    report.result("min_deficit_over_dh_power", if certified > 0 { json!(min_power_ratio) } else { json!(null) });
    report.assert("hminus_bound", max_h <= bound + 1e-8, format!("max ratio {max_h:.9} against 1+√2 = {bound:.9}"));
    report.assert(
        "linf_upgrade",
        subset > 0 && max_inf <= 1e3,
        format!("max ratio {max_inf:.4} over {subset} members with Lipschitz norm ≤ 2"),
    );
    report.assert(
        "hausdorff_bound",
        max_dh_ratio <= 3.0,
        format!("max d_H/‖|g′|−1‖∞ = {max_dh_ratio:.4} over {certified} certified domains"),
    );
    report.tables = vec![table];
    Ok(report)
}

fn reconstruct_cmd(cfg: &ExperimentConfig) -> Result<Report> {
    let weight = parse_weight(&cfg.weight, cfg.grid)?;
    let n_max = weight.series().n_max();
    let n_terms = cfg.n_modes.unwrap_or_else(|| default_modes(&weight)).min(n_max + 1);
    let map = reconstruct(&weight, n_terms)?;
    let mut coeffs = Table::new("reconstruct", &["index", "re", "im"]);
    for (k, c) in map.map_coeffs().iter().enumerate() {
        coeffs.push(vec![k.to_string(), num(c.re), num(c.im)]);
    }
    let curve_points = boundary_curve(&map, cfg.grid)?;
    let mut curve = Table::new("curve", &["x", "y"]);
    for p in &curve_points {
        curve.push(vec![num(p[0]), num(p[1])]);
    }
    let perimeter = conformal::perimeter(&map);
    let expected = 2.0 * PI * weight.mean();
    let margin = univalence_margin(&map);
    let apriori = conformal::apriori_norm(&map, cfg.alpha[0])?;
    let tail = map.truncation_tail();
    let mut report = Report::new(Command::Reconstruct);
    report.result("n_terms", n_terms);
    report.result("perimeter", perimeter);
    report.result("expected_perimeter", expected);
    report.result("univalence_margin", margin);
    report.result("apriori_norm", apriori);
    report.result("truncation_tail", tail);
    report.result("truncation_warning", map.truncation_warning());
    let tol = 1e-8 * expected + 2.0 * expected * tail;
    report.assert(
        "perimeter_matches_mass",
        (perimeter - expected).abs() <= tol,
        format!("perimeter {perimeter:.12} against 2π·mean(Θ) = {expected:.12}"),
    );
    if margin <= 1.0 {
        let dh = hausdorff_to_disk(&curve_points)?;
        let linf = weight.sup_distance(1.0);
        report.result("hausdorff", dh);
        report.assert("hausdorff_bound", dh <= 3.0 * linf + tol, format!("d_H = {dh:.6e}, 3‖Θ−1‖∞ = {:.6e}", 3.0 * linf));
    } else {
        report.result("hausdorff", json!(null));
    }
    report.tables = vec![coeffs, curve];
    Ok(report)
}

fn homogenize(cfg: &ExperimentConfig) -> Result<Report> {
    let weight = parse_weight(&cfg.weight, cfg.grid)?;
    if weight.min_value() <= 1.0 {
        return Err(Error::WeightNotAboveOne { min: weight.min_value() });
    }
    let base = StarBoundary::circle(1.0, 256)?;
    let (sigma, _) = converged_eigenvalues(&weight, 1, default_modes(&weight), cfg.tol)?;
    let target_sigma = sigma[1];
    let target_perimeter = 2.0 * PI * weight.mean();
    let m = weight.grid_size();
    let target_pairing: f64 = fourier::grid_angles(m)
        .iter()
        .zip(weight.samples())
        .map(|(t, w)| w * t.cos().powi(2))
        .sum::<f64>()
        * 2.0
        * PI
        / m as f64;
    let (rings, sectors) = cfg.mesh;
    let rows = cfg
        .teeth
        .par_iter()
        .map(|&k| {
            let sharp = oscillating_domain_with(&base, &weight, k, OscillationOptions::default())?;
            let smooth = oscillating_domain_with(
                &base,
                &weight,
                k,
                OscillationOptions { profile: ToothProfile::Smoothed, ..Default::default() },
            )?;
            let fem_sigma = fem::steklov_eigenvalues(&smooth, rings, sectors, 1)?[1];
            Ok((k, sharp.perimeter(), measure_pairing(&sharp, |x, _| x * x), fem_sigma))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(
        "homogenize",
        &["teeth", "perimeter", "perimeter_rel_err", "pairing", "pairing_rel_err", "fem_sigma_1", "sigma_rel_err"],
    );
    let (mut pe, mut qe, mut se) = (Vec::new(), Vec::new(), Vec::new());
    for &(k, p, q, s) in &rows {
        pe.push((p - target_perimeter).abs() / target_perimeter);
        qe.push((q - target_pairing).abs() / target_pairing);
        se.push((s - target_sigma).abs() / target_sigma);
        table.push(vec![k.to_string(), num(p), num(pe[pe.len() - 1]), num(q), num(qe[qe.len() - 1]), num(s), num(se[se.len() - 1])]);
    }
    let mut report = Report::new(Command::Homogenize);
    report.result("target_perimeter", target_perimeter);
    report.result("target_pairing", target_pairing);
    report.result("target_sigma_1", target_sigma);
    report.result("mesh", json!([rings, sectors]));
    let ladder = rows.len() > 1;
    report.assert("perimeter_converges", ladder && strictly_decreasing(&pe), format!("relative errors {pe:.4?}"));
    report.assert("pairing_converges", ladder && strictly_decreasing(&qe), format!("relative errors {qe:.4?}"));
    report.assert("fem_sigma_converges", ladder && strictly_decreasing(&se), format!("relative errors {se:.4?}"));
    report.tables = vec![table];
    Ok(report)
}

fn base_map(cfg: &ExperimentConfig) -> Result<ConformalMap> {
    let weight = parse_weight(&cfg.weight, cfg.grid)?;
    if weight.sup_distance(1.0) == 0.0 {
        return Ok(ConformalMap::identity());
    }
    let n_terms = cfg.n_modes.unwrap_or_else(|| default_modes(&weight)).min(weight.series().n_max() + 1);
    reconstruct(&weight, n_terms)
}

fn instability(cfg: &ExperimentConfig) -> Result<Report> {
    let base = base_map(cfg)?;
    let rows = cfg
        .sweep
        .par_iter()
        .map(|&n| {
            let out = instability_map(&base, n)?;
            let m = out.map.resolved_grid(1e-10);
            let w = out.map.boundary_weight(m)?;
            let (sigma, _) = converged_eigenvalues(&w, 1, default_modes(&w), cfg.tol)?;
            let perimeter = conformal::perimeter(&out.map);
            let log_sup = w.samples().iter().fold(0.0f64, |a, v| a.max(v.ln().abs()));
            // |g_n′| lies between |g′| ∓ (|f| + |f′|/(n+1)) on the boundary.
            let g = base.boundary_deriv_abs(m);
            let f = crate::conformal::series::eval_on_circle(&out.f_coeffs, 1.0, m);
            let df = crate::conformal::series::eval_on_circle(&crate::conformal::series::derivative(&out.f_coeffs), 1.0, m);
            let mut bound: f64 = 0.0;
            for j in 0..m {
                let spread = f[j].norm() + df[j].norm() / (n + 1) as f64;
                let lo = g[j] - spread;
                bound = bound.max((g[j] + spread).ln()).max(if lo > 0.0 { -lo.ln() } else { f64::INFINITY });
            }
            Ok((n, out.lambda, perimeter, sigma[1], log_sup, bound))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new("instability", &["n", "lambda", "perimeter", "sigma_1", "normalized", "gap", "log_sup", "log_bound"]);
    let mut gaps = Vec::new();
    let bound = rows.iter().map(|r| r.5).fold(0.0, f64::max);
    let log_max = rows.iter().map(|r| r.4).fold(0.0, f64::max);
    for &(n, lambda, perimeter, sigma, log_sup, b) in &rows {
        let normalized = perimeter * sigma / (2.0 * PI);
        gaps.push((normalized - 1.0).abs());
        table.push(vec![
            n.to_string(),
            num(lambda),
            num(perimeter),
            num(sigma),
            num(normalized),
            num(gaps[gaps.len() - 1]),
            num(log_sup),
            num(b),
        ]);
    }
    let mut report = Report::new(Command::Instability);
    report.result("lambda", rows[0].1);
    report.result("last_gap", gaps[gaps.len() - 1]);
    report.result("log_sup_max", log_max);
    report.result("log_bound", bound);
    report.assert("gap_decreases", rows.len() > 1 && strictly_decreasing(&gaps), format!("gaps {:?}", gaps.iter().map(|g| format!("{g:.4e}")).collect::<Vec<_>>()));
    report.assert("log_derivative_bounded", log_max <= bound + 1e-9, format!("max ‖log|g_n′|‖∞ = {log_max:.6} ≤ {bound:.6}"));
    report.tables = vec![table];
    Ok(report)
}

/// `g(1)` for `g′ = C(1 + βz^n)²`, the exact map with `|g′| = 1 + a cos(nt)`.
pub(crate) fn sharpness_g_at_one(a: f64, n: usize) -> f64 {
    let beta = a / (1.0 + (1.0 - a * a).sqrt());
    let c = 1.0 / (1.0 + beta * beta);
    let n = n as f64;
    c * (1.0 + 2.0 * beta / (n + 1.0) + beta * beta / (2.0 * n + 1.0))
}

fn sharpness(cfg: &ExperimentConfig) -> Result<Report> {
    let power = 2.0 - cfg.eps;
    let rows = cfg
        .sweep
        .par_iter()
        .map(|&n| {
            let s = sharpness_weight(n, cfg.eps, cfg.grid)?;
            let d = deficit(&s.weight)?;
            let map = reconstruct(&s.weight, s.weight.series().n_max())?;
            let g1 = map.eval(Complex64::new(1.0, 0.0)).re;
            let dh = hausdorff_to_disk(&boundary_curve(&map, s.weight.grid_size())?)?;
            Ok((s, d, g1, dh))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(
        "sharpness",
        &["n", "a_n", "deficit", "deficit_bound", "g_at_1", "g_at_1_exact", "remainder", "remainder_bound", "hausdorff", "c_measured", "ratio"],
    );
    let (mut within, mut g_ok, mut dh_ok) = (true, true, true);
    let (mut ratios, mut cs) = (Vec::new(), Vec::new());
    for (s, d, g1, dh) in &rows {
        let a = s.a_n;
        let exact = sharpness_g_at_one(a, s.n);
        let remainder = (g1 - 1.0 - a / (s.n as f64 + 1.0)).abs();
        let remainder_bound = -(1.0 - a).ln() - a;
        let ratio = d / dh.powf(power);
        let c = dh / s.hausdorff_proxy;
        within &= *d <= s.deficit_bound;
        g_ok &= (g1 - exact).abs() <= 1e-10 && remainder <= remainder_bound;
        dh_ok &= c >= 0.5;
        ratios.push(ratio);
        cs.push(c);
        table.push(vec![
            s.n.to_string(),
            num(a),
            num(*d),
            num(s.deficit_bound),
            num(*g1),
            num(exact),
            num(remainder),
            num(remainder_bound),
            num(*dh),
            num(c),
            num(ratio),
        ]);
    }
    let spread = ratios.iter().fold(0.0f64, |a, &v| a.max(v)) / ratios.iter().fold(f64::INFINITY, |a, &v| a.min(v));
    let mut report = Report::new(Command::Sharpness);
    report.result("exponent", power);
    report.result("ratio_spread", spread);
    report.result("c_measured_min", cs.iter().fold(f64::INFINITY, |a, &v| a.min(v)));
    report.assert("deficit_upper_bracket", within, "deficit ≤ a_n²/(n−3) at every order".into());
    report.assert("g_at_one", g_ok, "g_n(1) matches the closed form and the remainder bound".into());
    report.assert("hausdorff_lower", dh_ok, format!("d_H·n/a_n = {cs:.4?} against 0.5"));
    report.assert("ratio_bounded", spread <= 4.0, format!("max/min of deficit/d_H^{power} = {spread:.4}"));
    report.tables = vec![table];
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_of_unit_weight() {
        let mut cfg = ExperimentConfig::new(Command::Spectrum);
        cfg.n_modes = Some(16);
        let r = run(&cfg).unwrap();
        assert!(r.passed());
        let t = r.table("spectrum").unwrap();
        let sigma: Vec<f64> = t.column("sigma").unwrap().iter().map(|s| s.parse().unwrap()).collect();
        for (s, e) in sigma.iter().zip([0.0, 1.0, 1.0, 2.0]) {
            assert!((s - e).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_g_at_one() {
        // β → a/2 and C → 1 as a → 0
        let v = sharpness_g_at_one(1e-6, 8);
        assert!((v - 1.0 - 1e-6 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_weight_is_an_input_error() {
        let mut cfg = ExperimentConfig::new(Command::Spectrum);
        cfg.weight = "1 + 1.5*cos(2*t)".into();
        let outcome = run(&cfg);
        assert_eq!(super::super::exit_code(&outcome), 2);
    }
}
