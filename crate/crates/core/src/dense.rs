//! Small row-major dense matrices for desk-scale spectral work and direct solves.

use std::ops::{Index, IndexMut};
use std::sync::OnceLock;

use crate::error::{check_len, Result, SolverError};

/// Default limit on the number of entries a dense matrix may hold.
pub const DEFAULT_DENSE_CAP: usize = 4_000_000;

/// Environment variable overriding [`DEFAULT_DENSE_CAP`].
pub const DENSE_CAP_ENV: &str = "SADPREC_DENSE_CAP";

/// Maximum number of entries allowed in a dense matrix.
pub fn dense_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(DENSE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_DENSE_CAP)
    })
}

pub(crate) fn check_dense_cap(nrows: usize, ncols: usize) -> Result<()> {
    let requested = nrows.saturating_mul(ncols);
    let cap = dense_cap();
    if requested > cap {
        Err(SolverError::DenseCapExceeded { requested, cap })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            data: vec![0.0; nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_row_major(nrows: usize, ncols: usize, data: Vec<f64>) -> Result<Self> {
        check_len("dense row-major data", nrows * ncols, data.len())?;
        Ok(Self { nrows, ncols, data })
    }

    /// Build from nested rows; panics on ragged input (test and literal use).
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend_from_slice(r);
        }
        Self { nrows, ncols, data }
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        Self { nrows, ncols, data }
    }

    /// Assemble a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(nrows: usize, columns: &[Vec<f64>]) -> Result<Self> {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            check_len("dense column", nrows, col.len())?;
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.nrows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ncols, self.nrows, |i, j| self[(j, i)])
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len("dense matvec", self.ncols, x.len())?;
        Ok((0..self.nrows)
            .map(|i| crate::vector::dot(self.row(i), x))
            .collect())
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<Self> {
        check_len("dense matmul", self.ncols, other.nrows)?;
        let mut out = Self::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.ncols..(i + 1) * other.ncols];
                for (d, b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<Self> {
        check_len("dense sub rows", self.nrows, other.nrows)?;
        check_len("dense sub cols", self.ncols, other.ncols)?;
        Ok(Self {
            nrows: self.nrows,
            ncols: self.ncols,
            data: crate::vector::sub(&self.data, &other.data),
        })
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self {
            nrows: self.nrows,
            ncols: self.ncols,
            data: crate::vector::scaled(a, &self.data),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        crate::vector::norm2(&self.data)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest `|m_ij - m_ji|`.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.nrows {
            for j in (i + 1)..self.ncols.min(self.nrows) {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// Dense Cholesky factor `L` (lower triangular) with `M = L Lᵀ`.
    ///
    /// Only the lower triangle of `self` is read.
    pub fn cholesky_lower(&self) -> Result<DenseMatrix> {
        check_len("dense cholesky (square)", self.nrows, self.ncols)?;
        let n = self.nrows;
        let max_diag = (0..n).fold(0.0f64, |m, i| m.max(self[(i, i)].abs()));
        let pivot_floor = 1e-14 * max_diag;
        let mut l = DenseMatrix::zeros(n, n);
        for j in 0..n {
            let mut d = self[(j, j)];
            for k in 0..j {
                d -= l[(j, k)] * l[(j, k)];
            }
            if d <= pivot_floor || !d.is_finite() {
                return Err(SolverError::NotPositiveDefinite {
                    column: j,
                    pivot: d,
                });
            }
            let ljj = d.sqrt();
            l[(j, j)] = ljj;
            for i in (j + 1)..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / ljj;
            }
        }
        Ok(l)
    }
}

/// Solve `L Lᵀ x = b` given a dense lower-triangular Cholesky factor.
pub fn cholesky_solve_dense(l: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = l.nrows();
    check_len("dense cholesky solve", n, b.len())?;
    let mut y = b.to_vec();
    for i in 0..n {
        let row = l.row(i);
        let s = crate::vector::dot(&row[..i], &y[..i]);
        y[i] = (y[i] - s) / row[i];
    }
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in (i + 1)..n {
            s -= l[(k, i)] * y[k];
        }
        y[i] = s / l[(i, i)];
    }
    Ok(y)
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.nrows && j < self.ncols);
        &self.data[i * self.ncols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.nrows && j < self.ncols);
        &mut self.data[i * self.ncols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_and_transpose() {
        let a = DenseMatrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let at = a.transpose();
        assert_eq!(at, DenseMatrix::from_rows(&[&[1.0, 3.0], &[2.0, 4.0]]));
        let p = a.matmul(&DenseMatrix::identity(2)).unwrap();
        assert_eq!(p, a);
        assert_eq!(a.matvec(&[1.0, 1.0]).unwrap(), vec![3.0, 7.0]);
        assert!(a.matvec(&[1.0]).is_err());
    }

    #[test]
    fn cholesky_two_by_two() {
        let m = DenseMatrix::from_rows(&[&[4.0, 2.0], &[2.0, 5.0]]);
        let l = m.cholesky_lower().unwrap();
        assert_eq!(l, DenseMatrix::from_rows(&[&[2.0, 0.0], &[1.0, 2.0]]));
        let x = cholesky_solve_dense(&l, &[8.0, 9.0]).unwrap();
        assert!((x[0] - 1.375).abs() < 1e-15 && (x[1] - 1.25).abs() < 1e-15);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let m = DenseMatrix::from_rows(&[&[1.0, 2.0], &[2.0, 1.0]]);
        assert!(matches!(
            m.cholesky_lower(),
            Err(SolverError::NotPositiveDefinite { column: 1, .. })
        ));
    }

    #[test]
    fn asymmetry_measure() {
        let m = DenseMatrix::from_rows(&[&[1.0, 2.0], &[2.5, 1.0]]);
        assert_eq!(m.max_asymmetry(), 0.5);
    }
}
