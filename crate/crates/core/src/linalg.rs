//! Dense and banded kernels shared by the disk and FEM solvers.

use nalgebra::{ComplexField, DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Eigenpairs of a Hermitian definite pencil `A x = σ B x`.
#[derive(Debug, Clone)]
pub struct PencilEigen<T: ComplexField> {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// `B`-orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: Option<DMatrix<T>>,
}

/// Solves `A x = σ B x` for Hermitian `A` and Hermitian positive definite `B`
/// by Cholesky reduction `L⁻¹ A L⁻ᴴ` to a standard Hermitian problem.
pub fn hermitian_pencil<T>(a: &DMatrix<T>, b: DMatrix<T>, want_vectors: bool) -> Result<PencilEigen<T>>
where
    T: ComplexField<RealField = f64>,
{
    let n = a.nrows();
    if a.ncols() != n || b.nrows() != n || b.ncols() != n {
        return Err(Error::InvalidInput("pencil matrices must be square and equal-sized".into()));
    }
    let chol = nalgebra::Cholesky::new(b)
        .ok_or_else(|| Error::Factorization("mass matrix is not positive definite".into()))?;
    let l = chol.l();
    let x = l
        .solve_lower_triangular(a)
        .ok_or_else(|| Error::Factorization("singular Cholesky factor".into()))?;
    let mut c = l
        .solve_lower_triangular(&x.adjoint())
        .ok_or_else(|| Error::Factorization("singular Cholesky factor".into()))?;
    let half = T::from_real(0.5);
    c = (&c + c.adjoint()) * half;

    if !want_vectors {
        let mut values: Vec<f64> = c.symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(f64::total_cmp);
        return Ok(PencilEigen { values, vectors: None });
    }
    let eig = SymmetricEigen::new(c);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let sorted = DMatrix::from_fn(n, n, |r, col| eig.eigenvectors[(r, order[col])].clone());
    let vectors = l
        .adjoint()
        .solve_upper_triangular(&sorted)
        .ok_or_else(|| Error::Factorization("singular Cholesky factor".into()))?;
    Ok(PencilEigen { values, vectors: Some(vectors) })
}

/// Symmetric positive definite banded matrix factored as `L Lᵀ`.
///
/// Row `i` of the factor stores `L[i, i−bw..=i]` in `rows[i*(bw+1)..]`,
/// left-padded with zeros near the top.
#[derive(Debug, Clone)]
pub struct BandedCholesky {
    n: usize,
    bw: usize,
    rows: Vec<f64>,
}

impl BandedCholesky {
    /// Factors the matrix given through `entry(i, j)` for `j ≤ i`, `i − j ≤ bw`.
    pub fn factor(n: usize, bw: usize, entry: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let w = bw + 1;
        let mut rows = vec![0.0; n * w];
        for i in 0..n {
            let j0 = i.saturating_sub(bw);
            for j in j0..=i {
                let mut s = entry(i, j);
                let k0 = j.saturating_sub(bw).max(j0);
                for k in k0..j {
                    s -= rows[i * w + (k + bw - i)] * rows[j * w + (k + bw - j)];
                }
                if j == i {
                    if !(s > 0.0) {
                        return Err(Error::SingularInterior);
                    }
                    rows[i * w + bw] = s.sqrt();
                } else {
                    rows[i * w + (j + bw - i)] = s / rows[j * w + bw];
                }
            }
        }
        Ok(Self { n, bw, rows })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.bw
    }

    fn l(&self, i: usize, j: usize) -> f64 {
        self.rows[i * (self.bw + 1) + (j + self.bw - i)]
    }

    /// Solves `L y = b` in place for a right-hand side whose entries before `first` vanish.
    pub fn forward_from(&self, b: &mut [f64], first: usize) {
        for i in first..self.n {
            let mut s = b[i];
            for k in i.saturating_sub(self.bw).max(first)..i {
                s -= self.l(i, k) * b[k];
            }
            b[i] = s / self.l(i, i);
        }
    }

    /// Solves `Lᵀ x = y` in place.
    pub fn backward(&self, y: &mut [f64]) {
        for i in (0..self.n).rev() {
            let mut s = y[i];
            for k in i + 1..(i + self.bw + 1).min(self.n) {
                s -= self.l(k, i) * y[k];
            }
            y[i] = s / self.l(i, i);
        }
    }

    /// Solves `A x = b` in place.
    pub fn solve(&self, b: &mut [f64]) {
        self.forward_from(b, 0);
        self.backward(b);
    }
}

/// Compressed sparse row matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl CsrMatrix {
    /// Builds an `n × n` matrix from triplets, summing duplicates.
    pub fn from_triplets(n: usize, mut triplets: Vec<(usize, usize, f64)>) -> Self {
        triplets.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut row_ptr = vec![0usize; n + 1];
        let mut cols = Vec::with_capacity(triplets.len());
        let mut vals: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in triplets {
            if last == Some((i, j)) {
                *vals.last_mut().expect("duplicate follows an entry") += v;
            } else {
                cols.push(j);
                vals.push(v);
                row_ptr[i + 1] += 1;
                last = Some((i, j));
            }
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self { n, row_ptr, cols, vals }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Nonzeros of row `i` as `(column, value)`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()].iter().copied().zip(self.vals[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.row(i).find(|&(c, _)| c == j).map_or(0.0, |(_, v)| v)
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).map(|(_, v)| v).sum()).collect()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.n).all(|i| self.row(i).all(|(j, v)| (v - self.get(j, i)).abs() <= tol))
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut d = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                d[(i, j)] = v;
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn diagonal_pencil() {
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, 1.0, 2.0]));
        let b = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 2.0, 4.0]));
        let e = hermitian_pencil(&a, b, true).unwrap();
        assert_eq!(e.values.len(), 3);
        for (v, w) in e.values.iter().zip([0.5, 0.5, 3.0]) {
            assert!((v - w).abs() < 1e-14);
        }
    }

    #[test]
    fn complex_pencil_vectors_are_mass_orthonormal() {
        let a = DMatrix::from_row_slice(
            2,
            2,
            &[Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0), Complex64::new(3.0, 0.0)],
        );
        let b = DMatrix::from_row_slice(
            2,
            2,
            &[Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.5), Complex64::new(0.5, -0.5), Complex64::new(1.0, 0.0)],
        );
        let e = hermitian_pencil(&a, b.clone(), true).unwrap();
        let v = e.vectors.unwrap();
        let g = v.adjoint() * &b * &v;
        assert!((g - DMatrix::identity(2, 2)).norm() < 1e-12);
        let r = &a * &v - &b * &v * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(
            e.values.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        ));
        assert!(r.norm() < 1e-12);
    }

    #[test]
    fn indefinite_mass_is_rejected() {
        let a = DMatrix::<f64>::identity(2, 2);
        let b = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(matches!(hermitian_pencil(&a, b, false), Err(Error::Factorization(_))));
    }

    #[test]
    fn banded_cholesky_solves_tridiagonal() {
        let n = 50;
        let entry = |i: usize, j: usize| if i == j { 4.0 } else if i - j == 1 { -1.0 } else { 0.0 };
        let f = BandedCholesky::factor(n, 1, entry).unwrap();
        let x_true: Vec<f64> = (0..n).map(|i| (i as f64 * 0.3).sin()).collect();
        let mut b: Vec<f64> = (0..n)
            .map(|i| {
                let mut s = 4.0 * x_true[i];
                if i > 0 {
                    s -= x_true[i - 1];
                }
                if i + 1 < n {
                    s -= x_true[i + 1];
                }
                s
            })
            .collect();
        f.solve(&mut b);
        for (x, y) in b.iter().zip(&x_true) {
            assert!((x - y).abs() < 1e-13);
        }
    }

    #[test]
    fn banded_cholesky_rejects_singular() {
        let entry = |i: usize, j: usize| if i == j { 1.0 } else { 1.0 };
        assert!(matches!(BandedCholesky::factor(3, 2, entry), Err(Error::SingularInterior)));
    }

    #[test]
    fn csr_sums_duplicates() {
        let m = CsrMatrix::from_triplets(2, vec![(0, 0, 1.0), (1, 0, 2.0), (0, 0, 0.5), (0, 1, 2.0)]);
        assert_eq!(m.get(0, 0), 1.5);
        assert_eq!(m.nnz(), 3);
        assert!(m.is_symmetric(0.0));
        assert_eq!(m.row_sums(), vec![3.5, 2.0]);
    }
}
