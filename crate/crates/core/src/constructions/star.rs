use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fourier::{self, FourierSeries};

/// How a [`StarBoundary`] was specified.
#[derive(Debug, Clone, PartialEq)]
pub enum StarKind {
    /// Radii `r(θ_j) > 0` on the uniform angle grid.
    Radial { radii: Vec<f64> },
    /// Closed polyline whose vertices wind once, counter-clockwise, around the origin.
    Polyline,
}

/// Closed curve, star-shaped about the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct StarBoundary {
    kind: StarKind,
    points: Vec<[f64; 2]>,
    perimeter: f64,
}

fn polyline_length(pts: &[[f64; 2]]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        (b[0] - a[0]).hypot(b[1] - a[1])
    }).sum()
}

impl StarBoundary {
    /// Radial graph `r(θ_j)`, `θ_j = 2πj/m`.
    pub fn radial(radii: Vec<f64>) -> Result<Self> {
        if radii.len() < 3 {
            return Err(Error::InvalidGeometry("need at least 3 radii".into()));
        }
        if let Some(r) = radii.iter().find(|r| !(**r > 0.0)) {
            return Err(Error::InvalidGeometry(format!("radius {r} is not positive")));
        }
        let points: Vec<[f64; 2]> = fourier::grid_angles(radii.len())
            .into_iter()
            .zip(&radii)
            .map(|(t, r)| [r * t.cos(), r * t.sin()])
            .collect();
        let perimeter = polyline_length(&points);
        Ok(Self { kind: StarKind::Radial { radii }, points, perimeter })
    }

    pub fn circle(radius: f64, m: usize) -> Result<Self> {
        Self::radial(vec![radius; m])
    }

    /// Closed polyline; every ray from the origin must cross it exactly once.
    pub fn polyline(points: Vec<[f64; 2]>) -> Result<Self> {
        let n = points.len();
        if n < 3 {
            return Err(Error::InvalidGeometry("need at least 3 vertices".into()));
        }
        let mut winding = 0.0;
        for i in 0..n {
            let (a, b) = (points[i], points[(i + 1) % n]);
            let cross = a[0] * b[1] - a[1] * b[0];
            let dot = a[0] * b[0] + a[1] * b[1];
            if !(cross > 0.0) {
                return Err(Error::InvalidGeometry(format!(
                    "edge {i} does not turn counter-clockwise about the origin"
                )));
            }
            winding += cross.atan2(dot);
        }
        if (winding - 2.0 * PI).abs() > 1e-9 {
            return Err(Error::InvalidGeometry(format!("polyline winds {winding} radians, not 2π")));
        }
        let perimeter = polyline_length(&points);
        Ok(Self { kind: StarKind::Polyline, points, perimeter })
    }

    pub fn kind(&self) -> &StarKind {
        &self.kind
    }

    /// Vertices in counter-clockwise order.
    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    /// Polyline arc length.
    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    /// `(θ, r)` rows for radial boundaries, `(x, y)` rows otherwise.
    pub fn export_rows(&self) -> (&'static str, Vec<[f64; 2]>) {
        match &self.kind {
            StarKind::Radial { radii } => (
                "theta,r",
                fourier::grid_angles(radii.len()).into_iter().zip(radii).map(|(t, r)| [t, *r]).collect(),
            ),
            StarKind::Polyline => ("x,y", self.points.clone()),
        }
    }

    /// Boundary nodes for meshing: for a radial graph, the points on the rays
    /// `θ_j = 2πj/n` (Fourier interpolation of the radii); for a polyline, its
    /// vertices with every edge split evenly until there are at least `n`.
    pub fn mesh_nodes(&self, n: usize) -> Vec<[f64; 2]> {
        match &self.kind {
            StarKind::Radial { radii } if radii.len() == n => self.points.clone(),
            StarKind::Radial { radii } => {
                let series = fourier::analyze_real(radii).expect("at least 3 radii");
                let series = FourierSeries::from_centered(series.centered().to_vec(), n)
                    .expect("odd-length centred coefficients");
                fourier::grid_angles(n)
                    .into_iter()
                    .map(|t| {
                        let r = series.eval(t).re;
                        [r * t.cos(), r * t.sin()]
                    })
                    .collect()
            }
            StarKind::Polyline => {
                let m = self.points.len();
                let split = n.div_ceil(m).max(1);
                let mut out = Vec::with_capacity(m * split);
                for i in 0..m {
                    let (a, b) = (self.points[i], self.points[(i + 1) % m]);
                    for s in 0..split {
                        let u = s as f64 / split as f64;
                        out.push([a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1])]);
                    }
                }
                out
            }
        }
    }
}
