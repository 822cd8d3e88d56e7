use num_complex::Complex64;

use super::star::{StarBoundary, StarKind};
use crate::disk::BoundaryWeight;
use crate::error::{Error, Result};
use crate::fourier::{self, FourierSeries};

/// 2-periodic triangle wave: `x − 2k` on `[2k, 2k+1]`, `2k + 2 − x` on `[2k+1, 2k+2]`.
pub fn sawtooth(x: f64) -> f64 {
    let u = x.rem_euclid(2.0);
    if u <= 1.0 {
        u
    } else {
        2.0 - u
    }
}

/// Half-width of the parabolic corner rounding, in units of one tooth.
pub const ROUNDING: f64 = 0.05;

/// [`sawtooth`] with each corner replaced by the tangent parabola over `|x − j| < ROUNDING`.
pub fn smoothed_sawtooth(x: f64) -> f64 {
    let u = x.rem_euclid(2.0);
    let h = ROUNDING;
    let parabola = |v: f64| (v * v + h * h) / (2.0 * h);
    if u < h {
        parabola(u)
    } else if u > 2.0 - h {
        parabola(2.0 - u)
    } else if (u - 1.0).abs() < h {
        1.0 - parabola(u - 1.0)
    } else {
        sawtooth(u)
    }
}

/// Tooth shape of an oscillating boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ToothProfile {
    #[default]
    Sharp,
    /// Corners rounded over a fraction 0.1 of each tooth; better suited to P1 elements.
    Smoothed,
}

/// Sampling options for [`oscillating_domain_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillationOptions {
    /// Samples per tooth (one rising or falling flank); at least 16.
    pub samples_per_tooth: usize,
    pub profile: ToothProfile,
}

impl Default for OscillationOptions {
    fn default() -> Self {
        Self { samples_per_tooth: 16, profile: ToothProfile::Sharp }
    }
}

/// Arc-length parametrization of a smooth radial graph.
struct RadialCurve {
    r: FourierSeries,
    dr: FourierSeries,
    theta: Vec<f64>,
    arc: Vec<f64>,
}

impl RadialCurve {
    fn new(radii: &[f64]) -> Result<Self> {
        let r = fourier::analyze_real(radii)?;
        let dr = r.map_coeffs(|n, c| c * Complex64::new(0.0, n as f64));
        let m = (8 * radii.len()).max(4096);
        let theta = fourier::grid_angles(m);
        let mut arc = vec![0.0; m + 1];
        let speed = |t: f64| r.eval(t).re.hypot(dr.eval(t).re);
        let mut prev = speed(0.0);
        let h = 2.0 * std::f64::consts::PI / m as f64;
        for i in 0..m {
            let next = speed(h * (i + 1) as f64);
            arc[i + 1] = arc[i] + 0.5 * h * (prev + next);
            prev = next;
        }
        let mut theta = theta;
        theta.push(2.0 * std::f64::consts::PI);
        Ok(Self { r, dr, theta, arc })
    }

    fn length(&self) -> f64 {
        *self.arc.last().expect("non-empty table")
    }

    fn angle_at(&self, s: f64) -> f64 {
        let i = self.arc.partition_point(|&a| a <= s).clamp(1, self.arc.len() - 1);
        let (a0, a1) = (self.arc[i - 1], self.arc[i]);
        let u = if a1 > a0 { (s - a0) / (a1 - a0) } else { 0.0 };
        self.theta[i - 1] + u * (self.theta[i] - self.theta[i - 1])
    }

    /// Point and outward unit normal at polar angle `t`.
    fn frame(&self, t: f64) -> ([f64; 2], [f64; 2]) {
        let (r, dr) = (self.r.eval(t).re, self.dr.eval(t).re);
        let (c, s) = (t.cos(), t.sin());
        let tangent = [dr * c - r * s, dr * s + r * c];
        let norm = tangent[0].hypot(tangent[1]);
        ([r * c, r * s], [tangent[1] / norm, -tangent[0] / norm])
    }
}

/// Boundary `{x + λ(x)·ε·d(s(x)/ε)·ν(x)}` with `λ = √(Θ² − 1)` and `ε = |∂Ω|/k`,
/// using the default sampling (16 points per tooth, sharp corners).
pub fn oscillating_domain(base: &StarBoundary, weight: &BoundaryWeight, k: usize) -> Result<StarBoundary> {
    oscillating_domain_with(base, weight, k, OscillationOptions::default())
}

/// [`oscillating_domain`] with explicit sampling options. `k` counts teeth
/// (flanks); it must be even for `d(s/ε)` to close up. The weight is read at
/// the polar angle of each base point.
pub fn oscillating_domain_with(
    base: &StarBoundary,
    weight: &BoundaryWeight,
    k: usize,
    options: OscillationOptions,
) -> Result<StarBoundary> {
    let StarKind::Radial { radii } = base.kind() else {
        return Err(Error::InvalidGeometry("oscillating domains need a smooth radial base".into()));
    };
    if k < 2 || k % 2 != 0 {
        return Err(Error::InvalidInput(format!("tooth count {k} must be even and at least 2")));
    }
    if options.samples_per_tooth < 16 {
        return Err(Error::InvalidInput("at least 16 samples per tooth are required".into()));
    }
    if weight.min_value() <= 1.0 {
        return Err(Error::WeightNotAboveOne { min: weight.min_value() });
    }
    let curve = RadialCurve::new(radii)?;
    let length = curve.length();
    let eps = length / k as f64;
    let n = k * options.samples_per_tooth;
    let profile = match options.profile {
        ToothProfile::Sharp => sawtooth,
        ToothProfile::Smoothed => smoothed_sawtooth,
    };
    let points = (0..n)
        .map(|j| {
            let x = j as f64 / options.samples_per_tooth as f64;
            let t = curve.angle_at(x * eps);
            let (p, nu) = curve.frame(t);
            let theta = weight.eval(t);
            let lambda = (theta * theta - 1.0).max(0.0).sqrt();
            let offset = lambda * eps * profile(x);
            [p[0] + offset * nu[0], p[1] + offset * nu[1]]
        })
        .collect();
    StarBoundary::polyline(points)
}

/// `∫ φ dH¹` over the boundary polyline (trapezoid rule on each edge).
pub fn measure_pairing(boundary: &StarBoundary, phi: impl Fn(f64, f64) -> f64) -> f64 {
    let pts = boundary.points();
    let n = pts.len();
    (0..n)
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            0.5 * (b[0] - a[0]).hypot(b[1] - a[1]) * (phi(a[0], a[1]) + phi(b[0], b[1]))
        })
        .sum()
}
