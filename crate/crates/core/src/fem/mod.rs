//! P1 finite elements for the Steklov problem on star-shaped domains.
//!
//! Interior unknowns are eliminated by a banded Cholesky factorization,
//! leaving the discrete Dirichlet-to-Neumann matrix on the boundary nodes.

use nalgebra::DMatrix;

use crate::constructions::StarBoundary;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_pencil, BandedCholesky, CsrMatrix};

/// Consecutive ring widths shrink by this factor toward the boundary at the
/// reference resolution of [`REFERENCE_RINGS`] rings.
pub const GRADING: f64 = 1.2;
pub const REFERENCE_RINGS: usize = 8;

/// Triangulation with an ordered boundary loop.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub nodes: Vec<[f64; 2]>,
    /// Counter-clockwise vertex triples.
    pub triangles: Vec<[usize; 3]>,
    /// Consecutive boundary nodes, tracing the loop counter-clockwise.
    pub boundary_edges: Vec<[usize; 2]>,
    pub boundary_lengths: Vec<f64>,
}

fn signed_area(p: [f64; 2], q: [f64; 2], r: [f64; 2]) -> f64 {
    0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1]))
}

/// Ring radii `0 < ρ_1 < … < ρ_R = 1` with geometrically shrinking widths.
pub fn ring_radii(n_radial: usize) -> Vec<f64> {
    let ratio = GRADING.powf(REFERENCE_RINGS as f64 / n_radial as f64);
    let widths: Vec<f64> = (0..n_radial).map(|i| ratio.powi(-(i as i32))).collect();
    let total: f64 = widths.iter().sum();
    let mut acc = 0.0;
    let mut radii: Vec<f64> = widths
        .iter()
        .map(|w| {
            acc += w;
            acc / total
        })
        .collect();
    radii[n_radial - 1] = 1.0;
    radii
}

impl Mesh {
    /// Mesh of the unit disk.
    pub fn disk(n_radial: usize, n_angular: usize) -> Result<Self> {
        build_mesh(&StarBoundary::circle(1.0, n_angular)?, n_radial, n_angular)
    }

    pub fn area(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| signed_area(self.nodes[t[0]], self.nodes[t[1]], self.nodes[t[2]]))
            .sum()
    }

    pub fn perimeter(&self) -> f64 {
        self.boundary_lengths.iter().sum()
    }

    /// Copy with every node shifted by `offset`.
    pub fn translated(&self, offset: [f64; 2]) -> Self {
        let mut out = self.clone();
        for p in &mut out.nodes {
            p[0] += offset[0];
            p[1] += offset[1];
        }
        out
    }

    /// Copy with every node scaled by `factor` about the origin.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for p in &mut out.nodes {
            p[0] *= factor;
            p[1] *= factor;
        }
        out.boundary_lengths.iter_mut().for_each(|l| *l *= factor);
        out
    }

    /// Node list as `x,y` CSV.
    pub fn nodes_csv(&self) -> String {
        let mut s = String::from("x,y\n");
        for p in &self.nodes {
            s.push_str(&format!("{:.17e},{:.17e}\n", p[0], p[1]));
        }
        s
    }

    /// Triangle list as `a,b,c` CSV of node indices.
    pub fn triangles_csv(&self) -> String {
        let mut s = String::from("a,b,c\n");
        for t in &self.triangles {
            s.push_str(&format!("{},{},{}\n", t[0], t[1], t[2]));
        }
        s
    }
}

/// Radial-blend mesh `x(ρ_i, θ_j) = ρ_i·p_j` over the boundary nodes `p_j`
/// (see [`StarBoundary::mesh_nodes`]): a centre node, then `n_radial` rings
/// numbered from the inside out, the last one being the boundary.
pub fn build_mesh(boundary: &StarBoundary, n_radial: usize, n_angular: usize) -> Result<Mesh> {
    if n_radial < 2 || n_angular < 8 {
        return Err(Error::InvalidInput(format!(
            "need n_radial ≥ 2 and n_angular ≥ 8, got {n_radial} and {n_angular}"
        )));
    }
    let boundary_pts = boundary.mesh_nodes(n_angular);
    // re-validate: interpolated radial nodes could in principle fail to be star-shaped
    StarBoundary::polyline(boundary_pts.clone())?;
    let nb = boundary_pts.len();
    let radii = ring_radii(n_radial);
    let mut nodes = Vec::with_capacity(1 + n_radial * nb);
    nodes.push([0.0, 0.0]);
    for &rho in &radii {
        nodes.extend(boundary_pts.iter().map(|p| [rho * p[0], rho * p[1]]));
    }
    let ring = |i: usize, j: usize| 1 + i * nb + (j % nb);
    let mut triangles = Vec::with_capacity(nb * (2 * n_radial - 1));
    let mut push = |t: [usize; 3], nodes: &[[f64; 2]]| {
        if signed_area(nodes[t[0]], nodes[t[1]], nodes[t[2]]) < 0.0 {
            triangles.push([t[0], t[2], t[1]]);
        } else {
            triangles.push(t);
        }
    };
    for j in 0..nb {
        push([0, ring(0, j), ring(0, j + 1)], &nodes);
    }
    for i in 0..n_radial - 1 {
        for j in 0..nb {
            let (a, b, c, d) = (ring(i, j), ring(i, j + 1), ring(i + 1, j + 1), ring(i + 1, j));
            push([a, b, c], &nodes);
            push([a, c, d], &nodes);
        }
    }
    let last = n_radial - 1;
    let boundary_edges: Vec<[usize; 2]> = (0..nb).map(|j| [ring(last, j), ring(last, j + 1)]).collect();
    let boundary_lengths = boundary_edges
        .iter()
        .map(|e| {
            let (p, q) = (nodes[e[0]], nodes[e[1]]);
            (q[0] - p[0]).hypot(q[1] - p[1])
        })
        .collect();
    Ok(Mesh { nodes, triangles, boundary_edges, boundary_lengths })
}

/// P1 stiffness matrix and boundary mass matrix.
pub fn assemble(mesh: &Mesh) -> Result<(CsrMatrix, CsrMatrix)> {
    let n = mesh.nodes.len();
    let total = mesh.area().abs();
    let mut k = Vec::with_capacity(9 * mesh.triangles.len());
    for (idx, t) in mesh.triangles.iter().enumerate() {
        let p = t.map(|i| mesh.nodes[i]);
        let area = signed_area(p[0], p[1], p[2]);
        if !(area > 1e-14 * total) {
            return Err(Error::MeshQuality(format!("triangle {idx} has area {area:e}")));
        }
        let b = [p[1][1] - p[2][1], p[2][1] - p[0][1], p[0][1] - p[1][1]];
        let c = [p[2][0] - p[1][0], p[0][0] - p[2][0], p[1][0] - p[0][0]];
        for i in 0..3 {
            for j in 0..3 {
                k.push((t[i], t[j], (b[i] * b[j] + c[i] * c[j]) / (4.0 * area)));
            }
        }
    }
    let mut m = Vec::with_capacity(4 * mesh.boundary_edges.len());
    for (e, &len) in mesh.boundary_edges.iter().zip(&mesh.boundary_lengths) {
        m.push((e[0], e[0], len / 3.0));
        m.push((e[1], e[1], len / 3.0));
        m.push((e[0], e[1], len / 6.0));
        m.push((e[1], e[0], len / 6.0));
    }
    Ok((CsrMatrix::from_triplets(n, k), CsrMatrix::from_triplets(n, m)))
}

/// Smallest `k_max + 1` eigenvalues of `K u = σ M u`, with `M` supported on
/// the boundary nodes.
pub fn solve_steklov(stiffness: &CsrMatrix, boundary_mass: &CsrMatrix, k_max: usize) -> Result<Vec<f64>> {
    let n = stiffness.dim();
    if boundary_mass.dim() != n {
        return Err(Error::InvalidInput("stiffness and mass sizes differ".into()));
    }
    let is_boundary: Vec<bool> = (0..n).map(|i| boundary_mass.get(i, i) > 0.0).collect();
    let interior: Vec<usize> = (0..n).filter(|&i| !is_boundary[i]).collect();
    let bnd: Vec<usize> = (0..n).filter(|&i| is_boundary[i]).collect();
    let nb = bnd.len();
    if k_max >= nb {
        return Err(Error::InvalidInput(format!("k_max = {k_max} needs more than {nb} boundary nodes")));
    }
    const NONE: usize = usize::MAX;
    let mut pos = vec![NONE; n];
    for (p, &i) in interior.iter().enumerate() {
        pos[i] = p;
    }
    let mut bpos = vec![NONE; n];
    for (p, &i) in bnd.iter().enumerate() {
        bpos[i] = p;
    }

    let mut s = DMatrix::<f64>::zeros(nb, nb);
    for (p, &i) in bnd.iter().enumerate() {
        for (j, v) in stiffness.row(i) {
            if bpos[j] != NONE {
                s[(p, bpos[j])] += v;
            }
        }
    }

    let ni = interior.len();
    if ni > 0 {
        let mut bw = 0;
        for (p, &i) in interior.iter().enumerate() {
            for (j, _) in stiffness.row(i) {
                if pos[j] != NONE {
                    bw = bw.max(p.abs_diff(pos[j]));
                }
            }
        }
        let w = bw + 1;
        let mut band = vec![0.0; ni * w];
        for (p, &i) in interior.iter().enumerate() {
            for (j, v) in stiffness.row(i) {
                let q = pos[j];
                if q != NONE && q <= p {
                    band[p * w + (q + bw - p)] = v;
                }
            }
        }
        let chol = BandedCholesky::factor(ni, bw, |i, j| band[i * w + (j + bw - i)])?;

        // Columns of K_IB and the first interior row each one touches.
        let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nb];
        for (p, &i) in bnd.iter().enumerate() {
            for (j, v) in stiffness.row(i) {
                if pos[j] != NONE {
                    cols[p].push((pos[j], v));
                }
            }
        }
        let first = cols.iter().filter_map(|c| c.iter().map(|e| e.0).min()).min().unwrap_or(ni);
        let rows = ni - first;
        // W = L⁻¹ K_IB vanishes above row `first`.
        let mut wmat = DMatrix::<f64>::zeros(rows, nb);
        let mut buf = vec![0.0; ni];
        for (p, col) in cols.iter().enumerate() {
            if col.is_empty() {
                continue;
            }
            buf.iter_mut().for_each(|x| *x = 0.0);
            let start = col.iter().map(|e| e.0).min().expect("non-empty column");
            for &(r, v) in col {
                buf[r] = v;
            }
            chol.forward_from(&mut buf, start);
            for r in first..ni {
                wmat[(r - first, p)] = buf[r];
            }
        }
        s -= wmat.transpose() * &wmat;
    }
    let s = (&s + s.transpose()) * 0.5;
    let m = DMatrix::from_fn(nb, nb, |p, q| boundary_mass.get(bnd[p], bnd[q]));
    let eig = hermitian_pencil(&s, m, false)?;
    Ok(eig
        .values
        .into_iter()
        .take(k_max + 1)
        .map(|v| if v.abs() < 1e-10 { 0.0 } else { v })
        .collect())
}

/// Mesh, assemble and solve in one call.
pub fn steklov_eigenvalues(boundary: &StarBoundary, n_radial: usize, n_angular: usize, k_max: usize) -> Result<Vec<f64>> {
    let mesh = build_mesh(boundary, n_radial, n_angular)?;
    let (k, m) = assemble(&mesh)?;
    solve_steklov(&k, &m, k_max)
}

/// Richardson extrapolation from three values on meshes refined by a factor
/// 2 each; the order is estimated from the data and clamped to `[1, 4]`
/// (2 when the differences do not contract). Returns `(value, order)`.
pub fn richardson(coarse: f64, mid: f64, fine: f64) -> (f64, f64) {
    let ratio = (coarse - mid) / (mid - fine);
    let order = if ratio.is_finite() && ratio > 1.0 { ratio.log2().clamp(1.0, 4.0) } else { 2.0 };
    (fine + (fine - mid) / (2f64.powf(order) - 1.0), order)
}
