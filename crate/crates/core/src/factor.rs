//! Cholesky factorization of SPD matrices.
//!
//! The sparse path is the up-looking algorithm: row `k` of `L` comes from a
//! sparse triangular solve whose pattern is the reach of row `k` of the input
//! in the elimination tree. An optional reverse Cuthill–McKee preordering
//! limits fill. Small dense-ish inputs can go through a dense factorization.

use std::collections::VecDeque;

use crate::dense::{check_dense_cap, cholesky_solve_dense, DenseMatrix};
use crate::error::{check_len, Result, SolverError};
use crate::sparse::{CsrMatrix, TripletMatrix};

/// Largest size for which [`Backend::Auto`] considers the dense path.
pub const DENSE_BACKEND_MAX_SIZE: usize = 2000;

/// Relative pivot floor: pivots at or below `PIVOT_TOL · max|diag|` are rejected.
pub const PIVOT_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ordering {
    #[default]
    Natural,
    ReverseCuthillMcKee,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Dense when the matrix is small and at least a quarter full, sparse otherwise.
    #[default]
    Auto,
    Sparse,
    Dense,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CholeskyOptions {
    pub ordering: Ordering,
    pub backend: Backend,
}

#[derive(Debug, Clone)]
enum Storage {
    /// `L` by columns: diagonal first, then strictly lower entries in increasing row order.
    Sparse {
        col_ptr: Vec<usize>,
        row_idx: Vec<usize>,
        values: Vec<f64>,
    },
    Dense(DenseMatrix),
}

/// `P M Pᵀ = L Lᵀ` for an SPD matrix `M`.
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    size: usize,
    /// `perm[new] = old`
    perm: Vec<usize>,
    storage: Storage,
}

impl CholeskyFactor {
    pub fn new(m: &CsrMatrix) -> Result<Self> {
        Self::with_options(m, CholeskyOptions::default())
    }

    pub fn with_options(m: &CsrMatrix, opts: CholeskyOptions) -> Result<Self> {
        check_len("cholesky (square)", m.nrows(), m.ncols())?;
        let n = m.nrows();
        let perm = match opts.ordering {
            Ordering::Natural => (0..n).collect(),
            Ordering::ReverseCuthillMcKee => reverse_cuthill_mckee(m),
        };
        let pm = if opts.ordering == Ordering::Natural {
            m.clone()
        } else {
            m.permute_symmetric(&perm)?
        };
        let dense = match opts.backend {
            Backend::Dense => true,
            Backend::Sparse => false,
            Backend::Auto => n <= DENSE_BACKEND_MAX_SIZE && 4 * pm.nnz() > n * n,
        };
        let storage = if dense {
            check_dense_cap(n, n)?;
            Storage::Dense(pm.to_dense()?.cholesky_lower()?)
        } else {
            up_looking(&pm)?
        };
        Ok(Self {
            size: n,
            perm,
            storage,
        })
    }

    /// Factor an explicitly formed dense SPD matrix.
    pub fn from_dense(m: &DenseMatrix) -> Result<Self> {
        check_len("cholesky (square)", m.nrows(), m.ncols())?;
        Ok(Self {
            size: m.nrows(),
            perm: (0..m.nrows()).collect(),
            storage: Storage::Dense(m.cholesky_lower()?),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    /// Stored entries of `L`.
    pub fn factor_nnz(&self) -> usize {
        match &self.storage {
            Storage::Sparse { values, .. } => values.len(),
            Storage::Dense(l) => (0..l.nrows())
                .map(|i| l.row(i)[..=i].iter().filter(|v| **v != 0.0).count())
                .sum(),
        }
    }

    /// The lower-triangular factor of the permuted matrix.
    pub fn lower(&self) -> CsrMatrix {
        match &self.storage {
            Storage::Sparse {
                col_ptr,
                row_idx,
                values,
            } => {
                let mut t = TripletMatrix::with_capacity(self.size, self.size, values.len());
                for j in 0..self.size {
                    for p in col_ptr[j]..col_ptr[j + 1] {
                        t.push(row_idx[p], j, values[p]).expect("factor index in range");
                    }
                }
                t.to_csr()
            }
            Storage::Dense(l) => CsrMatrix::from_dense(l),
        }
    }

    /// `x = M⁻¹ b`.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        check_len("cholesky solve", self.size, b.len())?;
        let pb: Vec<f64> = self.perm.iter().map(|&old| b[old]).collect();
        let px = match &self.storage {
            Storage::Sparse {
                col_ptr,
                row_idx,
                values,
            } => sparse_solve(col_ptr, row_idx, values, pb),
            Storage::Dense(l) => cholesky_solve_dense(l, &pb)?,
        };
        let mut x = vec![0.0; self.size];
        for (new, &old) in self.perm.iter().enumerate() {
            x[old] = px[new];
        }
        Ok(x)
    }
}

fn sparse_solve(col_ptr: &[usize], row_idx: &[usize], values: &[f64], mut x: Vec<f64>) -> Vec<f64> {
    let n = x.len();
    for j in 0..n {
        let start = col_ptr[j];
        x[j] /= values[start];
        let xj = x[j];
        for p in (start + 1)..col_ptr[j + 1] {
            x[row_idx[p]] -= values[p] * xj;
        }
    }
    for j in (0..n).rev() {
        let start = col_ptr[j];
        let mut s = x[j];
        for p in (start + 1)..col_ptr[j + 1] {
            s -= values[p] * x[row_idx[p]];
        }
        x[j] = s / values[start];
    }
    x
}

const NONE: usize = usize::MAX;

/// Elimination tree from the upper triangle (columns `j < k` of row `k`).
fn elimination_tree(m: &CsrMatrix) -> Vec<usize> {
    let n = m.nrows();
    let mut parent = vec![NONE; n];
    let mut ancestor = vec![NONE; n];
    for k in 0..n {
        let (cols, _) = m.row(k);
        for &start in cols.iter().take_while(|&&j| j < k) {
            let mut i = start;
            while i != NONE && i < k {
                let next = ancestor[i];
                ancestor[i] = k;
                if next == NONE {
                    parent[i] = k;
                }
                i = next;
            }
        }
    }
    parent
}

/// Nonzero pattern of row `k` of `L` (excluding the diagonal), in topological order.
fn row_reach(
    m: &CsrMatrix,
    k: usize,
    parent: &[usize],
    mark: &mut [usize],
    stack: &mut Vec<usize>,
    out: &mut Vec<usize>,
) {
    out.clear();
    mark[k] = k;
    let (cols, _) = m.row(k);
    for &start in cols.iter().take_while(|&&j| j < k) {
        stack.clear();
        let mut i = start;
        while i != NONE && mark[i] != k {
            stack.push(i);
            mark[i] = k;
            i = parent[i];
        }
        // Each path is leaf-to-root. Appending it reversed and flipping the
        // whole list at the end puts later paths first, descendants before ancestors.
        out.extend(stack.drain(..).rev());
    }
    out.reverse();
}

fn up_looking(m: &CsrMatrix) -> Result<Storage> {
    let n = m.nrows();
    let parent = elimination_tree(m);
    let mut mark = vec![NONE; n];
    let mut stack = Vec::new();
    let mut pattern = Vec::new();

    // Symbolic pass for column counts.
    let mut counts = vec![1usize; n];
    for k in 0..n {
        row_reach(m, k, &parent, &mut mark, &mut stack, &mut pattern);
        for &i in &pattern {
            counts[i] += 1;
        }
    }
    let mut col_ptr = vec![0usize; n + 1];
    for j in 0..n {
        col_ptr[j + 1] = col_ptr[j] + counts[j];
    }
    let total = col_ptr[n];
    let mut row_idx = vec![0usize; total];
    let mut values = vec![0.0; total];
    let mut fill: Vec<usize> = col_ptr[..n].to_vec();

    let max_diag = m.diagonal().iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let floor = PIVOT_TOL * max_diag;
    let mut x = vec![0.0; n];
    mark.iter_mut().for_each(|v| *v = NONE);

    for k in 0..n {
        row_reach(m, k, &parent, &mut mark, &mut stack, &mut pattern);
        let (cols, vals) = m.row(k);
        for (&j, &v) in cols.iter().zip(vals) {
            if j <= k {
                x[j] = v;
            }
        }
        let mut d = x[k];
        x[k] = 0.0;
        for &i in &pattern {
            let lki = x[i] / values[col_ptr[i]];
            x[i] = 0.0;
            for p in (col_ptr[i] + 1)..fill[i] {
                x[row_idx[p]] -= values[p] * lki;
            }
            d -= lki * lki;
            let p = fill[i];
            row_idx[p] = k;
            values[p] = lki;
            fill[i] += 1;
        }
        if d <= floor || !d.is_finite() {
            return Err(SolverError::NotPositiveDefinite { column: k, pivot: d });
        }
        let p = fill[k];
        row_idx[p] = k;
        values[p] = d.sqrt();
        fill[k] += 1;
    }
    Ok(Storage::Sparse {
        col_ptr,
        row_idx,
        values,
    })
}

/// Reverse Cuthill–McKee ordering of the symmetric pattern of `m`; returns `perm[new] = old`.
pub fn reverse_cuthill_mckee(m: &CsrMatrix) -> Vec<usize> {
    let n = m.nrows();
    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|i| m.row(i).0.iter().copied().filter(|&j| j != i).collect())
        .collect();
    let degree: Vec<usize> = adjacency.iter().map(Vec::len).collect();

    let mut placed = vec![false; n];
    let mut scratch = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&i| (degree[i], i));

    for &seed in &by_degree {
        if placed[seed] {
            continue;
        }
        // Pseudo-peripheral root: move to a minimum-degree node of the deepest
        // BFS level while that increases the eccentricity.
        let mut root = seed;
        let (mut last, mut depth) = bfs_last_level(&adjacency, root, &mut scratch);
        loop {
            let candidate = *last
                .iter()
                .min_by_key(|&&v| (degree[v], v))
                .expect("BFS level is non-empty");
            let (cand_last, cand_depth) = bfs_last_level(&adjacency, candidate, &mut scratch);
            if cand_depth <= depth {
                break;
            }
            root = candidate;
            last = cand_last;
            depth = cand_depth;
        }

        let mut queue = VecDeque::from([root]);
        placed[root] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let mut nbrs: Vec<usize> = adjacency[u].iter().copied().filter(|&v| !placed[v]).collect();
            nbrs.sort_by_key(|&v| (degree[v], v));
            for v in nbrs {
                placed[v] = true;
                queue.push_back(v);
            }
        }
    }
    order.reverse();
    order
}

/// Nodes of the deepest BFS level from `root` and that level's depth.
fn bfs_last_level(adjacency: &[Vec<usize>], root: usize, seen: &mut [bool]) -> (Vec<usize>, usize) {
    let mut level = vec![root];
    let mut visited = vec![root];
    seen[root] = true;
    let mut depth = 0;
    loop {
        let mut next = Vec::new();
        for &u in &level {
            for &v in &adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    visited.push(v);
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        depth += 1;
        level = next;
    }
    for v in visited {
        seen[v] = false;
    }
    (level, depth)
}
