//! Translation-minimized Hausdorff distance between a polygon and the unit disk.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Result of the translation search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HausdorffFit {
    pub distance: f64,
    /// Centre of the best unit disk.
    pub center: [f64; 2],
}

struct Polygon<'a> {
    pts: &'a [[f64; 2]],
    lo: [f64; 2],
    cell: f64,
    nx: usize,
    ny: usize,
    cells: Vec<Vec<usize>>,
    strip_lo: f64,
    strip_h: f64,
    strips: Vec<Vec<usize>>,
}

fn seg_dist(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let s = if len2 > 0.0 { (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0) } else { 0.0 };
    (p[0] - a[0] - s * dx).hypot(p[1] - a[1] - s * dy)
}

impl<'a> Polygon<'a> {
    fn new(pts: &'a [[f64; 2]]) -> Self {
        let n = pts.len();
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in pts {
            for d in 0..2 {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        let side = (n as f64).sqrt().ceil().max(1.0);
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-300);
        let cell = span / side;
        let nx = ((hi[0] - lo[0]) / cell).floor() as usize + 1;
        let ny = ((hi[1] - lo[1]) / cell).floor() as usize + 1;
        let mut cells = vec![Vec::new(); nx * ny];
        let n_strips = side as usize;
        let strip_h = ((hi[1] - lo[1]) / n_strips as f64).max(1e-300);
        let mut strips = vec![Vec::new(); n_strips];
        for i in 0..n {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            let cx = |x: f64| (((x - lo[0]) / cell).floor() as usize).min(nx - 1);
            let cy = |y: f64| (((y - lo[1]) / cell).floor() as usize).min(ny - 1);
            for x in cx(a[0].min(b[0]))..=cx(a[0].max(b[0])) {
                for y in cy(a[1].min(b[1]))..=cy(a[1].max(b[1])) {
                    cells[y * nx + x].push(i);
                }
            }
            let sy = |y: f64| (((y - lo[1]) / strip_h).floor() as usize).min(n_strips - 1);
            for s in sy(a[1].min(b[1]))..=sy(a[1].max(b[1])) {
                strips[s].push(i);
            }
        }
        Self { pts, lo, cell, nx, ny, cells, strip_lo: lo[1], strip_h, strips }
    }

    fn segment(&self, i: usize) -> ([f64; 2], [f64; 2]) {
        (self.pts[i], self.pts[(i + 1) % self.pts.len()])
    }

    /// Crossing-number containment test.
    fn contains(&self, p: [f64; 2]) -> bool {
        let s = ((p[1] - self.strip_lo) / self.strip_h).floor();
        if s < 0.0 || s as usize >= self.strips.len() {
            return false;
        }
        let mut inside = false;
        for &i in &self.strips[s as usize] {
            let (a, b) = self.segment(i);
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x = a[0] + (p[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
                if x > p[0] {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Distance to the boundary by expanding rings of grid cells.
    fn boundary_distance(&self, p: [f64; 2]) -> f64 {
        let fx = ((p[0] - self.lo[0]) / self.cell).floor() as i64;
        let fy = ((p[1] - self.lo[1]) / self.cell).floor() as i64;
        let (nx, ny) = (self.nx as i64, self.ny as i64);
        // rings that miss the grid entirely are skipped
        let gap_x = if fx < 0 { -fx } else if fx >= nx { fx - nx + 1 } else { 0 };
        let gap_y = if fy < 0 { -fy } else if fy >= ny { fy - ny + 1 } else { 0 };
        let start = gap_x.max(gap_y);
        let last = (fx.max(nx - 1 - fx)).max(fy.max(ny - 1 - fy)).max(start);
        let mut best = f64::INFINITY;
        let visit = |x: i64, y: i64, best: &mut f64| {
            if (0..nx).contains(&x) && (0..ny).contains(&y) {
                for &i in &self.cells[(y * nx + x) as usize] {
                    let (a, b) = self.segment(i);
                    *best = best.min(seg_dist(p, a, b));
                }
            }
        };
        for k in start..=last {
            if k == 0 {
                visit(fx, fy, &mut best);
            } else {
                for x in (fx - k).max(0)..=(fx + k).min(nx - 1) {
                    visit(x, fy - k, &mut best);
                    visit(x, fy + k, &mut best);
                }
                for y in (fy - k + 1).max(0)..=(fy + k - 1).min(ny - 1) {
                    visit(fx - k, y, &mut best);
                    visit(fx + k, y, &mut best);
                }
            }
            if best <= k as f64 * self.cell {
                break;
            }
        }
        best
    }
}

fn signed_area(pts: &[[f64; 2]]) -> f64 {
    let n = pts.len();
    0.5 * (0..n).map(|i| {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        a[0] * b[1] - b[0] * a[1]
    }).sum::<f64>()
}

fn centroid(pts: &[[f64; 2]], area: f64) -> [f64; 2] {
    let n = pts.len();
    let mut c = [0.0; 2];
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        let cross = a[0] * b[1] - b[0] * a[1];
        c[0] += (a[0] + b[0]) * cross;
        c[1] += (a[1] + b[1]) * cross;
    }
    [c[0] / (6.0 * area), c[1] / (6.0 * area)]
}

/// `inf_z d_H(Ω, D + z)` for the region `Ω` bounded by `curve`.
pub fn hausdorff_to_disk(curve: &[[f64; 2]]) -> Result<f64> {
    Ok(hausdorff_to_disk_with(curve, (2 * curve.len()).max(1024))?.distance)
}

/// As [`hausdorff_to_disk`], sampling the disk with `disk_samples` points on
/// its boundary circle (and coarser concentric rings for containment).
pub fn hausdorff_to_disk_with(curve: &[[f64; 2]], disk_samples: usize) -> Result<HausdorffFit> {
    if curve.len() < 3 {
        return Err(Error::InvalidInput("a closed polyline needs at least 3 points".into()));
    }
    let area = signed_area(curve);
    let scale = curve.iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max).max(1e-300);
    if !(area.abs() > 1e-12 * scale * scale) {
        return Err(Error::InvalidInput("degenerate polyline (zero area)".into()));
    }
    let poly = Polygon::new(curve);
    let m = disk_samples.max(16);
    let mut probes: Vec<[f64; 2]> = Vec::new();
    for (radius, count) in [(1.0, m), (0.9, m / 2), (0.7, m / 4), (0.4, m / 8), (0.0, 1)] {
        let count: usize = count.max(1);
        for j in 0..count {
            let t = 2.0 * PI * j as f64 / count as f64;
            probes.push([radius * t.cos(), radius * t.sin()]);
        }
    }
    let objective = |z: [f64; 2]| {
        let outer = curve.iter().map(|p| (p[0] - z[0]).hypot(p[1] - z[1])).fold(0.0, f64::max) - 1.0;
        let inner = probes
            .iter()
            .map(|q| [q[0] + z[0], q[1] + z[1]])
            .filter(|y| !poly.contains(*y))
            .map(|y| poly.boundary_distance(y))
            .fold(0.0, f64::max);
        outer.max(inner).max(0.0)
    };
    let (center, distance) = nelder_mead(objective, centroid(curve, area), 0.05 * scale);
    Ok(HausdorffFit { distance, center })
}

fn nelder_mead(f: impl Fn([f64; 2]) -> f64, start: [f64; 2], size: f64) -> ([f64; 2], f64) {
    let mut s = [start, [start[0] + size, start[1]], [start[0], start[1] + size]];
    let mut v = s.map(&f);
    for _ in 0..500 {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        s = order.map(|i| s[i]);
        v = order.map(|i| v[i]);
        let extent = (s[1][0] - s[0][0]).hypot(s[1][1] - s[0][1]).max((s[2][0] - s[0][0]).hypot(s[2][1] - s[0][1]));
        if extent < 1e-10 {
            break;
        }
        let c = [(s[0][0] + s[1][0]) / 2.0, (s[0][1] + s[1][1]) / 2.0];
        let along = |t: f64| [c[0] + t * (s[2][0] - c[0]), c[1] + t * (s[2][1] - c[1])];
        let r = along(-1.0);
        let fr = f(r);
        if fr < v[0] {
            let e = along(-2.0);
            let fe = f(e);
            if fe < fr {
                s[2] = e;
                v[2] = fe;
            } else {
                s[2] = r;
                v[2] = fr;
            }
        } else if fr < v[1] {
            s[2] = r;
            v[2] = fr;
        } else {
            let k = if fr < v[2] { along(-0.5) } else { along(0.5) };
            let fk = f(k);
            if fk < v[2].min(fr) {
                s[2] = k;
                v[2] = fk;
            } else {
                for i in 1..3 {
                    s[i] = [(s[i][0] + s[0][0]) / 2.0, (s[i][1] + s[0][1]) / 2.0];
                    v[i] = f(s[i]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&a, &b| v[a].total_cmp(&v[b])).expect("simplex is non-empty");
    (s[best], v[best])
}
