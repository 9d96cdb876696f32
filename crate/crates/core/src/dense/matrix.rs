use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::vecops;

/// Column-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds from column-major storage.
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "storage does not match shape");
        Self { rows, cols, data }
    }

    /// Builds from row-major literal data, convenient in tests.
    pub fn from_row_slice(rows: usize, cols: usize, data: &[f64]) -> Self {
        assert_eq!(data.len(), rows * cols, "storage does not match shape");
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = data[r * cols + c];
            }
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<f64>]) -> Self {
        let mut data = Vec::with_capacity(rows * columns.len());
        for c in columns {
            assert_eq!(c.len(), rows, "column length does not match");
            data.extend_from_slice(c);
        }
        Self {
            rows,
            cols: columns.len(),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[f64]> {
        (0..self.cols).map(move |j| self.col(j))
    }

    pub fn push_col(&mut self, col: &[f64]) {
        assert_eq!(col.len(), self.rows, "column length does not match");
        self.data.extend_from_slice(col);
        self.cols += 1;
    }

    /// New matrix made of the listed columns, in that order.
    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for &j in idx {
            data.extend_from_slice(self.col(j));
        }
        Self {
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    /// Leading `rows` rows of the matrix.
    pub fn top_rows(&self, rows: usize) -> Self {
        self.row_block(0, rows)
    }

    pub fn row_block(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.rows);
        let mut data = Vec::with_capacity(len * self.cols);
        for j in 0..self.cols {
            data.extend_from_slice(&self.col(j)[start..start + len]);
        }
        Self {
            rows: len,
            cols: self.cols,
            data,
        }
    }

    /// `[self; other]`
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let rows = self.rows + other.rows;
        let mut data = Vec::with_capacity(rows * self.cols);
        for j in 0..self.cols {
            data.extend_from_slice(self.col(j));
            data.extend_from_slice(other.col(j));
        }
        Self {
            rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            for i in 0..self.rows {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// `self · other`
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let dst = &mut out.data[j * self.rows..(j + 1) * self.rows];
            for (k, &b) in other.col(j).iter().enumerate() {
                if b != 0.0 {
                    vecops::axpy(b, self.col(k), dst);
                }
            }
        }
        out
    }

    /// `selfᵀ · other`
    pub fn tr_matmul(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row counts differ");
        let mut out = Self::zeros(self.cols, other.cols);
        for j in 0..other.cols {
            for i in 0..self.cols {
                out[(i, j)] = vecops::dot(self.col(i), other.col(j));
            }
        }
        out
    }

    /// `self · x`
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![0.0; self.rows];
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0.0 {
                vecops::axpy(xj, self.col(j), &mut y);
            }
        }
        y
    }

    /// `selfᵀ · y`
    pub fn tr_mul_vec(&self, y: &[f64]) -> Vec<f64> {
        assert_eq!(y.len(), self.rows);
        self.columns().map(|c| vecops::dot(c, y)).collect()
    }

    /// Scales column `j` by `d[j]`, i.e. `self · diag(d)`.
    pub fn scale_cols(&self, d: &[f64]) -> Self {
        assert_eq!(d.len(), self.cols);
        let mut out = self.clone();
        for (j, &s) in d.iter().enumerate() {
            vecops::scale(s, out.col_mut(j));
        }
        out
    }

    /// `diag(d) · self`
    pub fn scale_rows(&self, d: &[f64]) -> Self {
        assert_eq!(d.len(), self.rows);
        let mut out = self.clone();
        for j in 0..self.cols {
            for (v, &s) in out.col_mut(j).iter_mut().zip(d) {
                *v *= s;
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: vecops::sub(&self.data, &other.data),
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        vecops::scale(s, &mut out.data);
        out
    }

    /// Largest absolute entry.
    pub fn norm_max(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn norm_fro(&self) -> f64 {
        vecops::norm2(&self.data)
    }

    /// Matrix 1-norm.
    pub fn norm_one(&self) -> f64 {
        self.columns()
            .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `‖selfᵀ·self − I‖_max`, the loss of orthonormality of the columns.
    pub fn orthonormality_error(&self) -> f64 {
        let g = self.tr_matmul(self);
        g.sub(&Self::identity(self.cols)).norm_max()
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[c * self.rows + r]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[c * self.rows + r]
    }
}
