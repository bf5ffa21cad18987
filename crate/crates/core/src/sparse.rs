//! Compressed sparse row storage and the kernels built on it.

use crate::dense::{check_dense_cap, DenseMatrix};
use crate::error::{check_len, Result, SolverError};

/// Coordinate-format accumulator. Duplicates are summed on conversion and
/// entries that sum to exactly zero are dropped.
#[derive(Debug, Clone, Default)]
pub struct TripletMatrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl TripletMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    pub fn with_capacity(nrows: usize, ncols: usize, cap: usize) -> Self {
        Self {
            nrows,
            ncols,
            entries: Vec::with_capacity(cap),
        }
    }

    pub fn push(&mut self, row: usize, col: usize, value: f64) -> Result<()> {
        if row >= self.nrows || col >= self.ncols {
            return Err(SolverError::IndexOutOfBounds {
                row,
                col,
                nrows: self.nrows,
                ncols: self.ncols,
            });
        }
        self.entries.push((row, col, value));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_csr(&self) -> CsrMatrix {
        let mut sorted = self.entries.clone();
        sorted.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; self.nrows + 1];
        let mut col_idx = Vec::with_capacity(sorted.len());
        let mut values: Vec<f64> = Vec::with_capacity(sorted.len());
        let mut k = 0;
        for row in 0..self.nrows {
            while k < sorted.len() && sorted[k].0 == row {
                let col = sorted[k].1;
                let mut v = 0.0;
                while k < sorted.len() && sorted[k].0 == row && sorted[k].1 == col {
                    v += sorted[k].2;
                    k += 1;
                }
                if v != 0.0 {
                    col_idx.push(col);
                    values.push(v);
                }
            }
            row_ptr[row + 1] = col_idx.len();
        }
        CsrMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            row_ptr,
            col_idx,
            values,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Build from raw CSR arrays, validating every structural invariant.
    pub fn new(
        nrows: usize,
        ncols: usize,
        row_ptr: Vec<usize>,
        col_idx: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        check_len("row_ptr", nrows + 1, row_ptr.len())?;
        check_len("values vs col_idx", col_idx.len(), values.len())?;
        if row_ptr[0] != 0 || row_ptr[nrows] != col_idx.len() {
            return Err(SolverError::InvalidParameter(
                "row_ptr must start at 0 and end at nnz".into(),
            ));
        }
        for row in 0..nrows {
            let (start, end) = (row_ptr[row], row_ptr[row + 1]);
            if start > end {
                return Err(SolverError::InvalidParameter(format!(
                    "row_ptr decreases at row {row}"
                )));
            }
            for k in start..end {
                let col = col_idx[k];
                if col >= ncols {
                    return Err(SolverError::IndexOutOfBounds {
                        row,
                        col,
                        nrows,
                        ncols,
                    });
                }
                if k > start && col_idx[k - 1] >= col {
                    return Err(SolverError::InvalidParameter(format!(
                        "column indices not strictly increasing in row {row}"
                    )));
                }
                if values[k] == 0.0 {
                    return Err(SolverError::InvalidParameter(format!(
                        "explicit zero stored at ({row}, {col})"
                    )));
                }
            }
        }
        Ok(Self {
            nrows,
            ncols,
            row_ptr,
            col_idx,
            values,
        })
    }

    pub fn from_triplets(nrows: usize, ncols: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut t = TripletMatrix::with_capacity(nrows, ncols, triplets.len());
        for &(r, c, v) in triplets {
            t.push(r, c, v)?;
        }
        Ok(t.to_csr())
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            row_ptr: vec![0; nrows + 1],
            col_idx: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scaled_identity(n, 1.0)
    }

    pub fn scaled_identity(n: usize, s: f64) -> Self {
        if s == 0.0 {
            return Self::zeros(n, n);
        }
        Self {
            nrows: n,
            ncols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: vec![s; n],
        }
    }

    /// Diagonal matrix with explicit zeros dropped.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let triplets: Vec<_> = diag.iter().enumerate().map(|(i, &v)| (i, i, v)).collect();
        Self::from_triplets(diag.len(), diag.len(), &triplets).expect("diagonal indices in range")
    }

    pub fn from_dense(m: &DenseMatrix) -> Self {
        let mut t = TripletMatrix::new(m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let v = m[(i, j)];
                if v != 0.0 {
                    t.entries.push((i, j, v));
                }
            }
        }
        t.to_csr()
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_idx(&self) -> &[usize] {
        &self.col_idx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let (s, e) = (self.row_ptr[i], self.row_ptr[i + 1]);
        (&self.col_idx[s..e], &self.values[s..e])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&j) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.nrows.min(self.ncols)).map(|i| self.get(i, i)).collect()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.nrows).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&j, &v)| (i, j, v))
        })
    }

    pub fn to_triplet_matrix(&self) -> TripletMatrix {
        TripletMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.triplets().collect(),
        }
    }

    /// `y = M x`, summing each row left to right over stored entries.
    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len("spmv", self.ncols, x.len())?;
        let mut y = vec![0.0; self.nrows];
        self.spmv_into(x, &mut y);
        Ok(y)
    }

    pub(crate) fn spmv_into(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let (cols, vals) = self.row(i);
            *yi = cols
                .iter()
                .zip(vals)
                .fold(0.0, |acc, (&j, &v)| acc + v * x[j]);
        }
    }

    /// `y = Mᵀ x` without forming the transpose.
    pub fn spmv_transpose(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len("spmv_transpose", self.nrows, x.len())?;
        let mut y = vec![0.0; self.ncols];
        self.spmv_transpose_into(x, &mut y);
        Ok(y)
    }

    pub(crate) fn spmv_transpose_into(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for (i, &xi) in x.iter().enumerate() {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                y[j] += v * xi;
            }
        }
    }

    pub fn transpose(&self) -> CsrMatrix {
        let mut counts = vec![0usize; self.ncols + 1];
        for &j in &self.col_idx {
            counts[j + 1] += 1;
        }
        for j in 0..self.ncols {
            counts[j + 1] += counts[j];
        }
        let row_ptr = counts.clone();
        let mut next = counts;
        let mut col_idx = vec![0usize; self.nnz()];
        let mut values = vec![0.0; self.nnz()];
        for i in 0..self.nrows {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                let dst = next[j];
                col_idx[dst] = i;
                values[dst] = v;
                next[j] += 1;
            }
        }
        CsrMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn scaled(&self, s: f64) -> CsrMatrix {
        if s == 0.0 {
            return Self::zeros(self.nrows, self.ncols);
        }
        let mut out = self.clone();
        crate::vector::scale(s, &mut out.values);
        out
    }

    /// `a·self + b·other`, dropping entries that cancel exactly.
    pub fn linear_combination(&self, a: f64, other: &CsrMatrix, b: f64) -> Result<CsrMatrix> {
        check_len("matrix sum rows", self.nrows, other.nrows)?;
        check_len("matrix sum cols", self.ncols, other.ncols)?;
        let mut t = TripletMatrix::with_capacity(self.nrows, self.ncols, self.nnz() + other.nnz());
        t.entries
            .extend(self.triplets().map(|(i, j, v)| (i, j, a * v)));
        t.entries
            .extend(other.triplets().map(|(i, j, v)| (i, j, b * v)));
        Ok(t.to_csr())
    }

    /// `self + s·I` for square matrices.
    pub fn shifted(&self, s: f64) -> Result<CsrMatrix> {
        check_len("shift (square)", self.nrows, self.ncols)?;
        self.linear_combination(1.0, &CsrMatrix::identity(self.nrows), s)
    }

    /// Sparse product `self · other`.
    pub fn matmul(&self, other: &CsrMatrix) -> Result<CsrMatrix> {
        check_len("sparse matmul", self.ncols, other.nrows)?;
        let mut acc = vec![0.0; other.ncols];
        let mut marker = vec![usize::MAX; other.ncols];
        let mut row_ptr = vec![0usize; self.nrows + 1];
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        let mut pattern = Vec::new();
        for i in 0..self.nrows {
            pattern.clear();
            let (acols, avals) = self.row(i);
            for (&k, &a) in acols.iter().zip(avals) {
                let (bcols, bvals) = other.row(k);
                for (&j, &b) in bcols.iter().zip(bvals) {
                    if marker[j] != i {
                        marker[j] = i;
                        acc[j] = 0.0;
                        pattern.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            pattern.sort_unstable();
            for &j in &pattern {
                if acc[j] != 0.0 {
                    col_idx.push(j);
                    values.push(acc[j]);
                }
            }
            row_ptr[i + 1] = col_idx.len();
        }
        Ok(CsrMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            row_ptr,
            col_idx,
            values,
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        crate::vector::norm2(&self.values)
    }

    /// Largest `|m_ij - m_ji|` over stored entries of either triangle.
    pub fn max_asymmetry(&self) -> f64 {
        if self.nrows != self.ncols {
            return f64::INFINITY;
        }
        self.triplets()
            .map(|(i, j, v)| (v - self.get(j, i)).abs())
            .fold(0.0, f64::max)
    }

    /// Symmetric within `rel_tol · max|m_ij|`.
    pub fn is_symmetric(&self, rel_tol: f64) -> bool {
        let scale = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        self.max_asymmetry() <= rel_tol * scale
    }

    /// Symmetric permutation `P M Pᵀ` where `perm[new] = old`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Result<CsrMatrix> {
        check_len("permutation", self.nrows, perm.len())?;
        let mut inv = vec![0usize; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut t = TripletMatrix::with_capacity(self.nrows, self.ncols, self.nnz());
        t.entries
            .extend(self.triplets().map(|(i, j, v)| (inv[i], inv[j], v)));
        Ok(t.to_csr())
    }

    pub fn to_dense(&self) -> Result<DenseMatrix> {
        check_dense_cap(self.nrows, self.ncols)?;
        let mut d = DenseMatrix::zeros(self.nrows, self.ncols);
        for (i, j, v) in self.triplets() {
            d[(i, j)] = v;
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spmv_examples() {
        let id = CsrMatrix::identity(3);
        assert_eq!(id.spmv(&[1.0, 2.0, 3.0]).unwrap(), vec![1.0, 2.0, 3.0]);

        let m = CsrMatrix::from_triplets(2, 2, &[(0, 0, 2.0), (0, 1, 1.0), (1, 0, -1.0)]).unwrap();
        assert_eq!(m.spmv(&[0.0, 1.0]).unwrap(), vec![1.0, 0.0]);

        let z = CsrMatrix::from_triplets(2, 2, &[(0, 0, 5.0)]).unwrap();
        assert_eq!(z.spmv(&[3.0, 7.0]).unwrap(), vec![15.0, 0.0]);

        assert!(matches!(
            m.spmv(&[1.0]),
            Err(SolverError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn spmv_transpose_examples() {
        let x = [4.0, -1.0, 2.0];
        assert_eq!(CsrMatrix::identity(3).spmv_transpose(&x).unwrap(), x.to_vec());
        let b = CsrMatrix::from_triplets(1, 1, &[(0, 0, 1.0)]).unwrap();
        assert_eq!(b.spmv_transpose(&[3.0]).unwrap(), vec![3.0]);
        let m = CsrMatrix::from_triplets(
            2,
            2,
            &[(0, 0, 1.0), (0, 1, 2.0), (1, 0, 3.0), (1, 1, 4.0)],
        )
        .unwrap();
        assert_eq!(m.spmv_transpose(&[1.0, 1.0]).unwrap(), vec![4.0, 6.0]);
        assert!(m.spmv_transpose(&[1.0]).is_err());
    }

    #[test]
    fn duplicates_summed_and_cancellations_dropped() {
        let m = CsrMatrix::from_triplets(
            2,
            2,
            &[(0, 0, 1.0), (0, 0, 2.0), (1, 1, 1.0), (1, 1, -1.0), (1, 0, 4.0)],
        )
        .unwrap();
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(0, 0), 3.0);
        assert_eq!(m.get(1, 1), 0.0);
        assert_eq!(m.row_ptr(), &[0, 1, 2]);
    }

    #[test]
    fn constructor_rejects_bad_structure() {
        assert!(CsrMatrix::new(1, 2, vec![0, 2], vec![1, 0], vec![1.0, 1.0]).is_err());
        assert!(CsrMatrix::new(1, 2, vec![0, 1], vec![2], vec![1.0]).is_err());
        assert!(CsrMatrix::new(1, 2, vec![0, 1], vec![0], vec![0.0]).is_err());
        assert!(CsrMatrix::new(2, 2, vec![0, 1, 0], vec![0], vec![1.0]).is_err());
        assert!(CsrMatrix::new(1, 2, vec![0, 1], vec![1], vec![1.0]).is_ok());
    }

    #[test]
    fn out_of_bounds_triplet() {
        assert!(matches!(
            CsrMatrix::from_triplets(2, 2, &[(2, 0, 1.0)]),
            Err(SolverError::IndexOutOfBounds { .. })
        ));
    }

    #[test]
    fn transpose_and_matmul() {
        let m = CsrMatrix::from_triplets(2, 3, &[(0, 0, 1.0), (0, 2, 2.0), (1, 1, 3.0)]).unwrap();
        let mt = m.transpose();
        assert_eq!(mt.shape(), (3, 2));
        assert_eq!(mt.get(2, 0), 2.0);
        let mmt = m.matmul(&mt).unwrap();
        assert_eq!(mmt.to_dense().unwrap(), DenseMatrix::from_rows(&[&[5.0, 0.0], &[0.0, 9.0]]));
    }

    #[test]
    fn to_dense_identity_and_shift() {
        let d = CsrMatrix::identity(2).to_dense().unwrap();
        assert_eq!(d, DenseMatrix::from_rows(&[&[1.0, 0.0], &[0.0, 1.0]]));
        let s = CsrMatrix::identity(2).shifted(-1.0).unwrap();
        assert_eq!(s.nnz(), 0);
    }

    #[test]
    fn symmetry_checks() {
        let m = CsrMatrix::from_triplets(2, 2, &[(0, 1, 1.0), (1, 0, 1.0 + 1e-3)]).unwrap();
        assert!(!m.is_symmetric(1e-12));
        assert!(m.is_symmetric(1e-2));
    }

    #[test]
    fn symmetric_permutation() {
        let m = CsrMatrix::from_triplets(2, 2, &[(0, 0, 1.0), (0, 1, 2.0), (1, 0, 2.0), (1, 1, 3.0)]).unwrap();
        let p = m.permute_symmetric(&[1, 0]).unwrap();
        assert_eq!(p.get(0, 0), 3.0);
        assert_eq!(p.get(1, 1), 1.0);
        assert_eq!(p.get(0, 1), 2.0);
    }
}
