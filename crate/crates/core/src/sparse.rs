//! Compressed sparse row storage and the `(A, B)` problem instance.

use alloc::vec;
use alloc::vec::Vec;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Real CSR matrix in canonical form: column indices strictly increasing
/// within each row. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Builds a matrix from raw CSR arrays, checking every structural invariant.
    pub fn from_csr(
        rows: usize,
        cols: usize,
        indptr: Vec<usize>,
        indices: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if indptr.len() != rows + 1 {
            return Err(Error::DimensionMismatch {
                expected: rows + 1,
                found: indptr.len(),
            });
        }
        if indices.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: indices.len(),
                found: values.len(),
            });
        }
        if indptr[0] != 0 || indptr[rows] != indices.len() {
            return Err(Error::InvalidInput("row offsets must start at 0 and end at nnz"));
        }
        for r in 0..rows {
            if indptr[r] > indptr[r + 1] {
                return Err(Error::InvalidInput("row offsets must be nondecreasing"));
            }
            let row = &indices[indptr[r]..indptr[r + 1]];
            if row.iter().any(|&c| c >= cols) {
                return Err(Error::InvalidInput("column index out of range"));
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInput(
                    "column indices must be strictly increasing within a row",
                ));
            }
        }
        Ok(Self {
            rows,
            cols,
            indptr,
            indices,
            values,
        })
    }

    /// Assembles a matrix from `(row, col, value)` triplets, 0-based.
    /// Duplicate entries are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let mut entries: Vec<(usize, usize, f64)> = triplets.into_iter().collect();
        if entries.iter().any(|&(r, c, _)| r >= rows || c >= cols) {
            return Err(Error::InvalidInput("triplet index out of range"));
        }
        entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

        let mut indptr = vec![0usize; rows + 1];
        let mut indices = Vec::with_capacity(entries.len());
        let mut values: Vec<f64> = Vec::with_capacity(entries.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in entries {
            if last == Some((r, c)) {
                *values.last_mut().expect("duplicate follows an entry") += v;
                continue;
            }
            indices.push(c);
            values.push(v);
            indptr[r + 1] += 1;
            last = Some((r, c));
        }
        for r in 0..rows {
            indptr[r + 1] += indptr[r];
        }
        Ok(Self {
            rows,
            cols,
            indptr,
            indices,
            values,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            indptr: vec![0; rows + 1],
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self {
            rows: n,
            cols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: diag.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn indptr(&self) -> &[usize] {
        &self.indptr
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Iterates stored entries as `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.rows).flat_map(move |r| {
            (self.indptr[r]..self.indptr[r + 1]).map(move |k| (r, self.indices[k], self.values[k]))
        })
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        let range = self.indptr[row]..self.indptr[row + 1];
        match self.indices[range.clone()].binary_search(&col) {
            Ok(pos) => self.values[range.start + pos],
            Err(_) => 0.0,
        }
    }

    /// `y = M·x`
    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let mut y = vec![0.0; self.rows];
        self.spmv_into(x, &mut y);
        Ok(y)
    }

    /// `x = Mᵀ·y` without forming the transpose.
    pub fn spmv_transpose(&self, y: &[f64]) -> Result<Vec<f64>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: y.len(),
            });
        }
        let mut x = vec![0.0; self.cols];
        self.spmv_transpose_into(y, &mut x);
        Ok(x)
    }

    pub(crate) fn spmv_into(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.cols);
        debug_assert_eq!(y.len(), self.rows);
        for (r, yr) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in self.indptr[r]..self.indptr[r + 1] {
                acc += self.values[k] * x[self.indices[k]];
            }
            *yr = acc;
        }
    }

    pub(crate) fn spmv_transpose_into(&self, y: &[f64], x: &mut [f64]) {
        debug_assert_eq!(y.len(), self.rows);
        debug_assert_eq!(x.len(), self.cols);
        x.iter_mut().for_each(|v| *v = 0.0);
        for (r, &yr) in y.iter().enumerate() {
            if yr == 0.0 {
                continue;
            }
            for k in self.indptr[r]..self.indptr[r + 1] {
                x[self.indices[k]] += self.values[k] * yr;
            }
        }
    }

    /// Matrix 1-norm: the largest absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let mut sums = vec![0.0; self.cols];
        for (&c, &v) in self.indices.iter().zip(&self.values) {
            sums[c] += v.abs();
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    /// Materialized transpose, again in canonical form.
    pub fn transpose(&self) -> Self {
        let mut counts = vec![0usize; self.cols + 1];
        for &c in &self.indices {
            counts[c + 1] += 1;
        }
        for c in 0..self.cols {
            counts[c + 1] += counts[c];
        }
        let indptr = counts.clone();
        let mut next = counts;
        let mut indices = vec![0usize; self.nnz()];
        let mut values = vec![0.0; self.nnz()];
        // rows are visited in increasing order, so each output row stays sorted
        for r in 0..self.rows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                let c = self.indices[k];
                let dst = next[c];
                indices[dst] = r;
                values[dst] = self.values[k];
                next[c] += 1;
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            indptr,
            indices,
            values,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= factor);
        out
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            d[(r, c)] = v;
        }
        d
    }
}

/// The problem instance: `A` (m×n) and `B` (p×n) with their 1-norms cached
/// once at construction.
#[derive(Debug, Clone)]
pub struct MatrixPair {
    a: SparseMatrix,
    b: SparseMatrix,
    norm1_a: f64,
    norm1_b: f64,
}

impl MatrixPair {
    pub fn new(a: SparseMatrix, b: SparseMatrix) -> Result<Self> {
        if a.cols() != b.cols() {
            return Err(Error::DimensionMismatch {
                expected: a.cols(),
                found: b.cols(),
            });
        }
        if a.rows() == 0 || b.rows() == 0 || a.cols() == 0 {
            return Err(Error::InvalidInput("A and B must have at least one row and column"));
        }
        let norm1_a = a.one_norm();
        let norm1_b = b.one_norm();
        Ok(Self {
            a,
            b,
            norm1_a,
            norm1_b,
        })
    }

    pub fn a(&self) -> &SparseMatrix {
        &self.a
    }

    pub fn b(&self) -> &SparseMatrix {
        &self.b
    }

    /// Rows of `A`.
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    /// Rows of `B`.
    pub fn p(&self) -> usize {
        self.b.rows()
    }

    /// Shared column count.
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn norm1_a(&self) -> f64 {
        self.norm1_a
    }

    pub fn norm1_b(&self) -> f64 {
        self.norm1_b
    }

    /// `(γA, γB)`
    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.a.scaled(factor), self.b.scaled(factor))
            .expect("scaling preserves a valid pair")
    }

    /// The swapped pair `(B, A)`, whose generalized singular values are the reciprocals.
    pub fn swapped(&self) -> Self {
        Self::new(self.b.clone(), self.a.clone()).expect("swapping preserves a valid pair")
    }
}
