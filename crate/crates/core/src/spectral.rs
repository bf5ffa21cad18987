//! Dense eigenvalue machinery for desk-scale spectral checks.
//!
//! Symmetric matrices go through cyclic Jacobi; general matrices are balanced,
//! reduced to Hessenberg form by Householder reflections and then driven to
//! real Schur form by Francis double-shift QR.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dense::{check_dense_cap, DenseMatrix};
use crate::error::{Result, SolverError};
use crate::factor::CholeskyFactor;
use crate::krylov::{operator_to_dense, LinearOperator};
use crate::precond::{build_preconditioner, InnerSolve, PrecondSpec};
use crate::saddle::{assemble_block_saddle, SaddleSystem};
use crate::stationary::IterationMatrixOperator;
use crate::vector::norm2;

/// Largest order accepted by the dense nonsymmetric eigensolver.
pub const DENSE_EIGEN_MAX_ORDER: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumSource {
    ComputedDense,
    ComputedSymmetric,
    /// `{1 (×n)} ∪ {μᵢ/(β + μᵢ)}` from the eigenvalues of `G = C + BA⁻¹Bᵀ`.
    PredictedRelaxed,
    PowerEstimate,
}

impl SpectrumSource {
    pub fn name(self) -> &'static str {
        match self {
            SpectrumSource::ComputedDense => "computed_dense",
            SpectrumSource::ComputedSymmetric => "computed_symmetric",
            SpectrumSource::PredictedRelaxed => "predicted_rmgss",
            SpectrumSource::PowerEstimate => "power_estimate",
        }
    }
}

impl fmt::Display for SpectrumSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpectrumSource {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self> {
        [
            SpectrumSource::ComputedDense,
            SpectrumSource::ComputedSymmetric,
            SpectrumSource::PredictedRelaxed,
            SpectrumSource::PowerEstimate,
        ]
        .into_iter()
        .find(|src| src.name() == s)
        .ok_or_else(|| SolverError::InvalidParameter(format!("unknown spectrum source '{s}'")))
    }
}

/// Eigenvalues sorted by `(re, im)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<Complex64>,
    source: SpectrumSource,
}

impl Spectrum {
    pub fn new(mut eigenvalues: Vec<Complex64>, source: SpectrumSource) -> Self {
        eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Self { eigenvalues, source }
    }

    pub fn from_real(values: impl IntoIterator<Item = f64>, source: SpectrumSource) -> Self {
        Self::new(values.into_iter().map(|v| Complex64::new(v, 0.0)).collect(), source)
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn source(&self) -> SpectrumSource {
        self.source
    }

    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Real parts, for spectra known to be real.
    pub fn real_parts(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|z| z.re).collect()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Smallest `|λ − point|`.
    pub fn min_distance_to(&self, point: Complex64) -> f64 {
        self.eigenvalues
            .iter()
            .map(|z| (z - point).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest `|λ − point|`.
    pub fn max_distance_to(&self, point: Complex64) -> f64 {
        self.eigenvalues
            .iter()
            .map(|z| (z - point).norm())
            .fold(0.0, f64::max)
    }

    /// Largest per-index distance between two sorted spectra of equal order.
    pub fn max_sorted_distance(&self, other: &Spectrum) -> Option<f64> {
        if self.order() != other.order() {
            return None;
        }
        Some(
            self.eigenvalues
                .iter()
                .zip(&other.eigenvalues)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max),
        )
    }

    /// CSV with header `re,im,source` and 17 significant digits per value.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "re,im,source")?;
        for z in &self.eigenvalues {
            writeln!(w, "{:.16e},{:.16e},{}", z.re, z.im, self.source)?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Spectrum> {
        let parse_err = |line: usize, message: String| SolverError::Parse {
            path: "<spectrum csv>".into(),
            line,
            message,
        };
        let mut values = Vec::new();
        let mut source = None;
        for (idx, line) in r.lines().enumerate() {
            let line = line.map_err(|e| parse_err(idx + 1, e.to_string()))?;
            if idx == 0 {
                if line.trim() != "re,im,source" {
                    return Err(parse_err(1, format!("unexpected header '{line}'")));
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(parse_err(idx + 1, "expected 3 fields".into()));
            }
            let num = |s: &str| s.trim().parse::<f64>().map_err(|e| parse_err(idx + 1, e.to_string()));
            values.push(Complex64::new(num(fields[0])?, num(fields[1])?));
            source = Some(fields[2].trim().parse()?);
        }
        Ok(Spectrum::new(values, source.unwrap_or(SpectrumSource::ComputedDense)))
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

/// Cyclic Jacobi until the off-diagonal Frobenius norm is at most `1e-12·‖M‖_F`.
pub fn jacobi_eigen_decomposition(m: &DenseMatrix) -> Result<SymmetricEigen> {
    if !m.is_square() {
        return Err(SolverError::DimensionMismatch {
            context: "jacobi (square)",
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    let asym = m.max_asymmetry();
    if asym > 1e-12 * m.max_abs() {
        return Err(SolverError::NotSymmetric {
            name: "jacobi input",
            asymmetry: asym,
        });
    }
    let n = m.nrows();
    let mut a = m.clone();
    let mut v = DenseMatrix::identity(n);
    let target = 1e-12 * m.frobenius_norm();
    let off_norm = |a: &DenseMatrix| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)] * a[(i, j)];
                }
            }
        }
        s.sqrt()
    };

    const MAX_SWEEPS: usize = 100;
    let mut sweeps = 0;
    while off_norm(&a) > target {
        if sweeps == MAX_SWEEPS {
            return Err(SolverError::EigenNoConvergence {
                sweeps,
                found: 0,
                order: n,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = idx.iter().map(|&i| a[(i, i)]).collect();
    let vectors = DenseMatrix::from_fn(n, n, |r, c| v[(r, idx[c])]);
    Ok(SymmetricEigen { values, vectors })
}

pub fn jacobi_symmetric_eigen(m: &DenseMatrix) -> Result<Spectrum> {
    let eig = jacobi_eigen_decomposition(m)?;
    Ok(Spectrum::from_real(eig.values, SpectrumSource::ComputedSymmetric))
}

/// Eigenvalues of a general real matrix via Hessenberg reduction and
/// Francis double-shift QR.
pub fn dense_eigen_real_schur(m: &DenseMatrix) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(SolverError::DimensionMismatch {
            context: "real schur (square)",
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    let n = m.nrows();
    if n > DENSE_EIGEN_MAX_ORDER {
        return Err(SolverError::InvalidParameter(format!(
            "order {n} exceeds the dense eigensolver limit of {DENSE_EIGEN_MAX_ORDER}; use a smaller grid"
        )));
    }
    let mut a = m.clone();
    balance(&mut a);
    hessenberg_in_place(&mut a);
    let values = hessenberg_qr_eigenvalues(&mut a)?;
    Ok(Spectrum::new(values, SpectrumSource::ComputedDense))
}

/// Diagonal similarity by powers of two so that row and column norms are comparable.
fn balance(a: &mut DenseMatrix) {
    const RADIX: f64 = 2.0;
    let n = a.nrows();
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let ginv = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= ginv;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form (similarity transform).
pub fn hessenberg_in_place(a: &mut DenseMatrix) {
    let n = a.nrows();
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n];
    for k in 0..n - 2 {
        let norm = (k + 1..n).map(|i| a[(i, k)] * a[(i, k)]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        v.fill(0.0);
        v[k + 1] = x0 - alpha;
        for i in (k + 2)..n {
            v[i] = a[(i, k)];
        }
        let vnorm_sq: f64 = v[k + 1..].iter().map(|x| x * x).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sq;
        // A ← H A
        for j in 0..n {
            let s: f64 = (k + 1..n).map(|i| v[i] * a[(i, j)]).sum();
            let s = tau * s;
            for i in (k + 1)..n {
                a[(i, j)] -= s * v[i];
            }
        }
        // A ← A H
        for i in 0..n {
            let s: f64 = (k + 1..n).map(|j| a[(i, j)] * v[j]).sum();
            let s = tau * s;
            for j in (k + 1)..n {
                a[(i, j)] -= s * v[j];
            }
        }
        a[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            a[(i, k)] = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix, deflating 1×1 and
/// 2×2 diagonal blocks. The matrix is destroyed.
fn hessenberg_qr_eigenvalues(a: &mut DenseMatrix) -> Result<Vec<Complex64>> {
    let n = a.nrows() as isize;
    let mut wr = vec![0.0; n as usize];
    let mut wi = vec![0.0; n as usize];
    let at = |i: isize, j: isize| (i as usize, j as usize);

    let mut anorm = 0.0;
    for i in 0..n {
        for j in (i - 1).max(0)..n {
            anorm += a[at(i, j)].abs();
        }
    }

    let sweep_cap = 100 * (n.max(1) as usize);
    let mut total_sweeps = 0usize;
    let mut nn = n - 1;
    let mut t = 0.0;
    let (mut p, mut q, mut r): (f64, f64, f64);

    while nn >= 0 {
        let mut its = 0usize;
        loop {
            let mut l = nn;
            while l >= 1 {
                let mut s = a[at(l - 1, l - 1)].abs() + a[at(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[at(l, l - 1)].abs() + s == s {
                    a[at(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[at(nn, nn)];
            if l == nn {
                wr[nn as usize] = x + t;
                wi[nn as usize] = 0.0;
                nn -= 1;
            } else {
                let mut y = a[at(nn - 1, nn - 1)];
                let mut w = a[at(nn, nn - 1)] * a[at(nn - 1, nn)];
                if l == nn - 1 {
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    let mut z = q.abs().sqrt();
                    x += t;
                    let (i0, i1) = ((nn - 1) as usize, nn as usize);
                    if q >= 0.0 {
                        z = p + sign(z, p);
                        wr[i0] = x + z;
                        wr[i1] = x + z;
                        if z != 0.0 {
                            wr[i1] = x - w / z;
                        }
                        wi[i0] = 0.0;
                        wi[i1] = 0.0;
                    } else {
                        wr[i0] = x + p;
                        wr[i1] = x + p;
                        wi[i0] = -z;
                        wi[i1] = z;
                    }
                    nn -= 2;
                } else {
                    if total_sweeps >= sweep_cap {
                        return Err(SolverError::EigenNoConvergence {
                            sweeps: total_sweeps,
                            found: (n - 1 - nn) as usize,
                            order: n as usize,
                        });
                    }
                    if its > 0 && its.is_multiple_of(10) {
                        // Exceptional shift.
                        t += x;
                        for i in 0..=nn {
                            a[at(i, i)] -= x;
                        }
                        let s = a[at(nn, nn - 1)].abs() + a[at(nn - 1, nn - 2)].abs();
                        x = 0.75 * s;
                        y = x;
                        w = -0.4375 * s * s;
                    }
                    its += 1;
                    total_sweeps += 1;

                    let mut m = nn - 2;
                    loop {
                        let z = a[at(m, m)];
                        let rr = x - z;
                        let s = y - z;
                        p = (rr * s - w) / a[at(m + 1, m)] + a[at(m, m + 1)];
                        q = a[at(m + 1, m + 1)] - z - rr - s;
                        r = a[at(m + 2, m + 1)];
                        let s = p.abs() + q.abs() + r.abs();
                        p /= s;
                        q /= s;
                        r /= s;
                        if m == l {
                            break;
                        }
                        let u = a[at(m, m - 1)].abs() * (q.abs() + r.abs());
                        let v = p.abs() * (a[at(m - 1, m - 1)].abs() + z.abs() + a[at(m + 1, m + 1)].abs());
                        if u + v == v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in (m + 2)..=nn {
                        a[at(i, i - 2)] = 0.0;
                        if i != m + 2 {
                            a[at(i, i - 3)] = 0.0;
                        }
                    }

                    let mut k = m;
                    while k < nn {
                        if k != m {
                            p = a[at(k, k - 1)];
                            q = a[at(k + 1, k - 1)];
                            r = 0.0;
                            if k != nn - 1 {
                                r = a[at(k + 2, k - 1)];
                            }
                            x = p.abs() + q.abs() + r.abs();
                            if x != 0.0 {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        let s = sign((p * p + q * q + r * r).sqrt(), p);
                        if s != 0.0 {
                            if k == m {
                                if l != m {
                                    a[at(k, k - 1)] = -a[at(k, k - 1)];
                                }
                            } else {
                                a[at(k, k - 1)] = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            let z = r / s;
                            q /= p;
                            r /= p;
                            for j in k..=nn {
                                let mut pp = a[at(k, j)] + q * a[at(k + 1, j)];
                                if k != nn - 1 {
                                    pp += r * a[at(k + 2, j)];
                                    a[at(k + 2, j)] -= pp * z;
                                }
                                a[at(k + 1, j)] -= pp * y;
                                a[at(k, j)] -= pp * x;
                            }
                            let mmin = if nn < k + 3 { nn } else { k + 3 };
                            for i in l..=mmin {
                                let mut pp = x * a[at(i, k)] + y * a[at(i, k + 1)];
                                if k != nn - 1 {
                                    pp += z * a[at(i, k + 2)];
                                    a[at(i, k + 2)] -= pp * r;
                                }
                                a[at(i, k + 1)] -= pp * q;
                                a[at(i, k)] -= pp;
                            }
                        }
                        k += 1;
                    }
                }
            }
            if l >= nn - 1 {
                break;
            }
        }
    }
    Ok(wr.into_iter().zip(wi).map(|(re, im)| Complex64::new(re, im)).collect())
}

/// Power-iteration estimate of the spectral radius: the largest
/// `‖Γᵏv‖ / ‖Γᵏ⁻¹v‖` after `iters` steps over `restarts` fixed-seed random
/// starts. A lower-biased estimate, never ground truth.
pub fn power_spectral_radius(op: &dyn LinearOperator, iters: usize, restarts: usize) -> f64 {
    let n = op.dim();
    let mut best = 0.0f64;
    for start in 0..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9 + start as u64);
        let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let nv = norm2(&v);
        if nv == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= nv);
        let mut ratio = 0.0;
        for _ in 0..iters {
            let w = op.apply(&v);
            let nw = norm2(&w);
            ratio = nw;
            if nw == 0.0 {
                break;
            }
            v = w.into_iter().map(|x| x / nw).collect();
        }
        best = best.max(ratio);
    }
    best
}

/// Dense `G = C + B A⁻¹ Bᵀ` (m×m), using a sparse Cholesky factor of `A`.
pub fn relaxed_g_dense(sys: &SaddleSystem) -> Result<DenseMatrix> {
    let m = sys.m();
    check_dense_cap(m, m)?;
    let factor = CholeskyFactor::new(sys.a())?;
    let mut g = sys.c().to_dense()?;
    let mut row = vec![0.0; sys.n()];
    for j in 0..m {
        row.iter_mut().for_each(|v| *v = 0.0);
        let (cols, vals) = sys.b().row(j);
        for (&c, &v) in cols.iter().zip(vals) {
            row[c] = v;
        }
        let x = factor.solve(&row)?;
        let bx = sys.b().spmv(&x)?;
        for (i, v) in bx.iter().enumerate() {
            g[(i, j)] += v;
        }
    }
    for i in 0..m {
        for j in (i + 1)..m {
            let avg = 0.5 * (g[(i, j)] + g[(j, i)]);
            g[(i, j)] = avg;
            g[(j, i)] = avg;
        }
    }
    Ok(g)
}

/// Ascending eigenvalues `μᵢ` of `G = C + BA⁻¹Bᵀ`.
pub fn relaxed_g_eigenvalues(sys: &SaddleSystem) -> Result<Vec<f64>> {
    Ok(jacobi_eigen_decomposition(&relaxed_g_dense(sys)?)?.values)
}

/// Predicted spectrum of `P_RMGSS⁻¹𝒜`: `1` with multiplicity `n`, plus `μᵢ/(β + μᵢ)`.
pub fn predicted_rmgss_spectrum(sys: &SaddleSystem, beta: f64) -> Result<Spectrum> {
    if !(beta > 0.0) {
        return Err(SolverError::InvalidParameter(format!("beta must be positive, got {beta}")));
    }
    let mu = relaxed_g_eigenvalues(sys)?;
    let values = std::iter::repeat_n(1.0, sys.n())
        .chain(mu.into_iter().map(|mu| mu / (beta + mu)));
    Ok(Spectrum::from_real(values, SpectrumSource::PredictedRelaxed))
}

/// `max |λᵢ − 1| = β/(β + μ_min)` over the relaxed preconditioned spectrum.
pub fn rmgss_cluster_radius(sys: &SaddleSystem, beta: f64) -> Result<f64> {
    let mu = relaxed_g_eigenvalues(sys)?;
    Ok(mu.first().map_or(0.0, |&mu_min| beta / (beta + mu_min)))
}

/// Dense `P⁻¹𝒜`, built column by column with exact (DIRECT) inner solves.
pub fn preconditioned_matrix_dense(sys: &SaddleSystem, spec: PrecondSpec) -> Result<DenseMatrix> {
    let order = sys.order();
    check_dense_cap(order, order)?;
    let spec = spec.with_inner(InnerSolve::Direct);
    let prec = build_preconditioner(sys, spec)?;
    let a = assemble_block_saddle(sys);
    let at = a.transpose();
    let mut columns = Vec::with_capacity(order);
    let mut col = vec![0.0; order];
    for j in 0..order {
        col.iter_mut().for_each(|v| *v = 0.0);
        let (rows, vals) = at.row(j);
        for (&i, &v) in rows.iter().zip(vals) {
            col[i] = v;
        }
        columns.push(prec.apply(&col)?);
    }
    DenseMatrix::from_columns(order, &columns)
}

/// Dense iteration matrix `Γ = M⁻¹N` of the MGSS splitting.
pub fn iteration_matrix_dense(sys: &SaddleSystem, alpha: f64, beta: f64) -> Result<DenseMatrix> {
    let op = IterationMatrixOperator::new(sys, alpha, beta)?;
    operator_to_dense(&op)
}

#[derive(Debug, Clone)]
pub struct IterationSpectrumCheck {
    /// `max |λ(Γ)|`
    pub rho: f64,
    pub min_dist_to_plus_one: f64,
    pub min_dist_to_minus_one: f64,
    pub spectrum: Spectrum,
}

/// Dense spectrum of `Γ`: its radius and how close it comes to `±1`.
pub fn verify_iteration_spectrum(sys: &SaddleSystem, alpha: f64, beta: f64) -> Result<IterationSpectrumCheck> {
    if sys.order() > DENSE_EIGEN_MAX_ORDER {
        return Err(SolverError::InvalidParameter(format!(
            "order {} exceeds the dense eigensolver limit of {DENSE_EIGEN_MAX_ORDER}",
            sys.order()
        )));
    }
    let spectrum = dense_eigen_real_schur(&iteration_matrix_dense(sys, alpha, beta)?)?;
    Ok(IterationSpectrumCheck {
        rho: spectrum.spectral_radius(),
        min_dist_to_plus_one: spectrum.min_distance_to(Complex64::new(1.0, 0.0)),
        min_dist_to_minus_one: spectrum.min_distance_to(Complex64::new(-1.0, 0.0)),
        spectrum,
    })
}
