#![allow(dead_code)]

use num_complex::Complex64;

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        let diag: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum();
        if off <= 1e-30 * diag.max(1e-300) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut v: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    v.sort_by(f64::total_cmp);
    v
}

fn cholesky(b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = b.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = b[i][j] - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            l[i][j] = if i == j { s.sqrt() } else { s / l[j][j] };
        }
    }
    l
}

/// `L⁻¹ X` for lower triangular `L`.
fn lower_solve(l: &[Vec<f64>], x: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = l.len();
    let cols = x[0].len();
    let mut y = vec![vec![0.0; cols]; n];
    for c in 0..cols {
        for i in 0..n {
            let s: f64 = x[i][c] - (0..i).map(|k| l[i][k] * y[k][c]).sum::<f64>();
            y[i][c] = s / l[i][i];
        }
    }
    y
}

fn transpose(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

/// Generalized eigenvalues of a Hermitian pencil `A x = λ B x` through the
/// real embedding `[[Re, −Im], [Im, Re]]`, Cholesky reduction and Jacobi.
pub fn pencil_oracle(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<f64> {
    let embed = |m: &[Vec<Complex64>]| {
        let n = m.len();
        let mut r = vec![vec![0.0; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                r[i][j] = m[i][j].re;
                r[i][j + n] = -m[i][j].im;
                r[i + n][j] = m[i][j].im;
                r[i + n][j + n] = m[i][j].re;
            }
        }
        r
    };
    let (ar, br) = (embed(a), embed(b));
    let l = cholesky(&br);
    let y = lower_solve(&l, &ar);
    let c = lower_solve(&l, &transpose(&y));
    let n = c.len();
    let sym: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| 0.5 * (c[i][j] + c[j][i])).collect()).collect();
    // every eigenvalue appears twice in the embedding
    jacobi_eigenvalues(sym).into_iter().step_by(2).collect()
}

pub fn dense(m: &nalgebra::DMatrix<Complex64>) -> Vec<Vec<Complex64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}
