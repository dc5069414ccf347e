//! `A^n v` for symmetric `A` with spectrum in `[-1, 1]`, approximated by
//! `phi_k(A) v` with `k` matrix-vector products instead of `n`.
//!
//! By the spectral mapping theorem the 2-norm error is at most
//! `p(n, k) * ||v||_2`, the scalar sup-norm error of `phi_k` on `[-1, 1]`.
//! Spectrum containment is the caller's responsibility; it is only checked
//! through the row-sum norm, which is sufficient but not necessary.

use crate::approx_error::{select_degree, DegreePlan};
use crate::chebyshev::ChebSeries;
use crate::error::{Error, Result};

/// Entrywise tolerance for the symmetry check.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        for row in 0..dim {
            for col in row + 1..dim {
                let gap = (entries[row * dim + col] - entries[col * dim + row]).abs();
                // NaN entries fail this check as well.
                if gap.is_nan() || gap > SYMMETRY_TOL {
                    return Err(Error::NotSymmetric { row, col, gap });
                }
            }
        }
        Ok(SymMatrix { dim, entries })
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        let mut entries = vec![0.0; dim * dim];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * dim + i] = d;
        }
        SymMatrix::new(dim, entries)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        SymMatrix::from_diagonal(&vec![1.0; dim])
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        SymMatrix::new(dim, vec![0.0; dim * dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    /// `out = A x`.
    pub fn matvec(&self, x: &[f64], out: &mut [f64]) {
        for (row, o) in self.entries.chunks_exact(self.dim).zip(out.iter_mut()) {
            *o = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    /// Largest absolute row sum, an upper bound on the spectral radius.
    pub fn row_sum_norm(&self) -> f64 {
        self.entries
            .chunks_exact(self.dim)
            .map(|row| row.iter().map(|a| a.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `true` when the row-sum norm does not certify a spectrum in `[-1, 1]`.
    pub fn spectrum_unverified(&self) -> bool {
        self.row_sum_norm() > 1.0 + SYMMETRY_TOL
    }

    /// Parses the text format: the dimension on the first line, then one
    /// whitespace-separated row per line.
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let (dim, entries) = parse_matrix_entries(text)?;
        SymMatrix::new(dim, entries).map_err(|e| e.to_string())
    }
}

/// Dimension and row-major entries of a matrix file, without the symmetry
/// check.
pub fn parse_matrix_entries(text: &str) -> std::result::Result<(usize, Vec<f64>), String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let dim: usize = lines
        .next()
        .ok_or("empty matrix file")?
        .trim()
        .parse()
        .map_err(|e| format!("bad dimension: {e}"))?;
    let mut entries = Vec::with_capacity(dim * dim);
    for row in 0..dim {
        let line = lines
            .next()
            .ok_or_else(|| format!("expected {dim} rows, found {row}"))?;
        let before = entries.len();
        for tok in line.split_whitespace() {
            entries.push(
                tok.parse::<f64>()
                    .map_err(|e| format!("row {row}: bad entry {tok:?}: {e}"))?,
            );
        }
        if entries.len() - before != dim {
            return Err(format!(
                "row {row}: expected {dim} entries, found {}",
                entries.len() - before
            ));
        }
    }
    if lines.next().is_some() {
        return Err(format!("trailing data after {dim} rows"));
    }
    Ok((dim, entries))
}

/// Whitespace-separated floats, on one line or several.
pub fn parse_vector(text: &str) -> std::result::Result<Vec<f64>, String> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|e| format!("bad entry {tok:?}: {e}"))
        })
        .collect()
}

/// Counts matrix-vector products.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct MatVecCounter {
    count: usize,
}

impl MatVecCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn apply<F>(&mut self, op: &mut F, x: &[f64], out: &mut [f64])
    where
        F: FnMut(&[f64], &mut [f64]),
    {
        self.count += 1;
        op(x, out);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatPowOutput {
    pub result: Vec<f64>,
    pub matvecs: usize,
    /// Set when the row-sum norm exceeds 1, so the error certificate may
    /// not apply.
    pub spectrum_warning: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AutoMatPowOutput {
    pub result: Vec<f64>,
    pub k: u64,
    pub matvecs: usize,
    pub plan: DegreePlan,
    pub spectrum_warning: bool,
}

fn check_dims(a: &SymMatrix, v: &[f64]) -> Result<()> {
    if v.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: v.len(),
        });
    }
    Ok(())
}

/// `phi_k(A) v` through the forward recurrence
/// `T_{j+1}(A) v = 2 A T_j(A) v - T_{j-1}(A) v`, using exactly `k`
/// matrix-vector products.
pub fn cheb_matpow(a: &SymMatrix, v: &[f64], n: u64, k: u64) -> Result<MatPowOutput> {
    check_dims(a, v)?;
    let (result, matvecs) = cheb_matpow_with(|x, out| a.matvec(x, out), v, n, k)?;
    Ok(MatPowOutput {
        result,
        matvecs,
        spectrum_warning: a.spectrum_unverified(),
    })
}

/// Operator form of [`cheb_matpow`]: `apply(x, out)` must write `A x` into
/// `out` for a symmetric `A` with spectrum in `[-1, 1]`.
pub fn cheb_matpow_with<F>(mut apply: F, v: &[f64], n: u64, k: u64) -> Result<(Vec<f64>, usize)>
where
    F: FnMut(&[f64], &mut [f64]),
{
    let coeffs = ChebSeries::truncated_monomial(n, k)?.coeffs_f64();
    let c = |j: usize| coeffs.get(j).copied().unwrap_or(0.0);
    let dim = v.len();
    let mut counter = MatVecCounter::new();

    let half_c0 = 0.5 * c(0);
    let mut acc: Vec<f64> = v.iter().map(|x| half_c0 * x).collect();
    if k == 0 {
        return Ok((acc, 0));
    }
    let mut prev = v.to_vec();
    let mut cur = vec![0.0; dim];
    counter.apply(&mut apply, &prev, &mut cur);
    axpy(c(1), &cur, &mut acc);

    let mut next = vec![0.0; dim];
    for j in 2..=k as usize {
        counter.apply(&mut apply, &cur, &mut next);
        for (nx, p) in next.iter_mut().zip(&prev) {
            *nx = 2.0 * *nx - p;
        }
        axpy(c(j), &next, &mut acc);
        // prev <- cur, cur <- next; the old prev buffer is reused for next.
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut cur, &mut next);
    }
    Ok((acc, counter.count()))
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    if alpha == 0.0 {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// `A^n v` by `n` successive products.
pub fn repeated_matpow(a: &SymMatrix, v: &[f64], n: u64) -> Result<(Vec<f64>, usize)> {
    check_dims(a, v)?;
    let mut cur = v.to_vec();
    let mut next = vec![0.0; v.len()];
    for _ in 0..n {
        a.matvec(&cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    Ok((cur, n as usize))
}

/// Selects `k` for tolerance `epsilon` and applies [`cheb_matpow`].
pub fn auto_matpow(a: &SymMatrix, v: &[f64], n: u64, epsilon: f64) -> Result<AutoMatPowOutput> {
    check_dims(a, v)?;
    let plan = select_degree(n, epsilon)?;
    let out = cheb_matpow(a, v, n, plan.k)?;
    Ok(AutoMatPowOutput {
        result: out.result,
        k: plan.k,
        matvecs: out.matvecs,
        plan,
        spectrum_warning: out.spectrum_warning,
    })
}

pub fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|a| a * a).sum::<f64>().sqrt()
}

pub fn diff_norm2(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}
