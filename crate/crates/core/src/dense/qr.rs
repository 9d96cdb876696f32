use alloc::vec;
use alloc::vec::Vec;

use super::DenseMatrix;
use crate::error::{Error, Result};
use crate::vecops::{axpy, dot, norm2, scale};

/// Relative size below which a new column counts as linearly dependent.
pub const RANK_TOL: f64 = 1e-13;

/// Thin QR factorization `M = Q·R`, `Q` with orthonormal columns and `R`
/// upper triangular with nonnegative diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct ThinQr {
    pub q: DenseMatrix,
    pub r: DenseMatrix,
}

/// A column could not be appended: its component orthogonal to `Q` is
/// below [`RANK_TOL`] times its norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankDeficiency {
    pub gamma: f64,
    pub col_norm: f64,
}

impl ThinQr {
    /// Factorization of a matrix with `rows` rows and no columns yet.
    pub fn empty(rows: usize) -> Self {
        Self {
            q: DenseMatrix::zeros(rows, 0),
            r: DenseMatrix::zeros(0, 0),
        }
    }

    pub fn rows(&self) -> usize {
        self.q.rows()
    }

    pub fn k(&self) -> usize {
        self.q.cols()
    }

    /// Appends a column with classical Gram–Schmidt applied twice. On rank
    /// deficiency the factorization is left untouched.
    pub fn push_column(&mut self, col: &[f64]) -> core::result::Result<(), RankDeficiency> {
        let (g, w, gamma) = self.orthogonalize(col);
        let col_norm = norm2(col);
        if !(gamma > RANK_TOL * col_norm) {
            return Err(RankDeficiency { gamma, col_norm });
        }
        let mut q_new = w;
        q_new.iter_mut().for_each(|v| *v /= gamma);
        self.grow(&q_new, &g, gamma);
        Ok(())
    }

    /// Like [`push_column`](Self::push_column), but a dependent column is
    /// still appended: its diagonal entry in `R` becomes 0 and `Q` is
    /// completed with an arbitrary unit vector orthogonal to the existing
    /// columns. Returns `true` when that happened.
    pub fn push_column_or_complete(&mut self, col: &[f64]) -> Result<bool> {
        let (g, w, gamma) = self.orthogonalize(col);
        let col_norm = norm2(col);
        if gamma > RANK_TOL * col_norm {
            let mut q_new = w;
            q_new.iter_mut().for_each(|v| *v /= gamma);
            self.grow(&q_new, &g, gamma);
            return Ok(false);
        }
        let q_new = self
            .orthonormal_completion(&w)
            .ok_or(Error::SubspaceExhausted("no room for another orthonormal column"))?;
        self.grow(&q_new, &g, 0.0);
        Ok(true)
    }

    /// Functional form of [`push_column`](Self::push_column).
    pub fn append_column(&self, col: &[f64]) -> core::result::Result<Self, RankDeficiency> {
        let mut out = self.clone();
        out.push_column(col)?;
        Ok(out)
    }

    // Returns (Qᵀa accumulated over both passes, residual, its norm).
    fn orthogonalize(&self, col: &[f64]) -> (Vec<f64>, Vec<f64>, f64) {
        assert_eq!(col.len(), self.rows(), "column length does not match Q");
        let mut w = col.to_vec();
        let mut g = vec![0.0; self.k()];
        for _ in 0..2 {
            let h = self.q.tr_mul_vec(&w);
            for (j, &hj) in h.iter().enumerate() {
                axpy(-hj, self.q.col(j), &mut w);
                g[j] += hj;
            }
        }
        let gamma = norm2(&w);
        (g, w, gamma)
    }

    fn grow(&mut self, q_new: &[f64], g: &[f64], gamma: f64) {
        let k = self.k();
        self.q.push_col(q_new);
        let mut r = DenseMatrix::zeros(k + 1, k + 1);
        for j in 0..k {
            for i in 0..=j {
                r[(i, j)] = self.r[(i, j)];
            }
        }
        for (i, &gi) in g.iter().enumerate() {
            r[(i, k)] = gi;
        }
        r[(k, k)] = gamma;
        self.r = r;
    }

    /// Unit vector orthogonal to the columns of `Q`, preferring the direction of `hint`.
    fn orthonormal_completion(&self, hint: &[f64]) -> Option<Vec<f64>> {
        if self.k() >= self.rows() {
            return None;
        }
        if norm2(hint) > 0.0 {
            if let Some(v) = self.orthonormalize_candidate(hint) {
                return Some(v);
            }
        }
        // the standard basis vector with the largest component outside span(Q)
        let best = (0..self.rows())
            .map(|i| {
                let inside: f64 = self.q.columns().map(|c| c[i] * c[i]).sum();
                (i, 1.0 - inside)
            })
            .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc })
            .0;
        let mut e = vec![0.0; self.rows()];
        e[best] = 1.0;
        self.orthonormalize_candidate(&e)
    }

    fn orthonormalize_candidate(&self, v: &[f64]) -> Option<Vec<f64>> {
        let mut w = v.to_vec();
        scale(1.0 / norm2(&w), &mut w);
        for _ in 0..2 {
            for c in self.q.columns() {
                let h = dot(c, &w);
                axpy(-h, c, &mut w);
            }
        }
        let nrm = norm2(&w);
        if nrm > 0.5 {
            scale(1.0 / nrm, &mut w);
            Some(w)
        } else {
            None
        }
    }
}

/// Householder thin QR of an `m×n` matrix with `m ≥ n`; `R` gets a
/// nonnegative diagonal.
pub fn householder_qr(a: &DenseMatrix) -> ThinQr {
    let (m, n) = (a.rows(), a.cols());
    assert!(m >= n, "householder_qr needs rows >= cols");
    let mut work = a.clone();
    let mut vs: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut taus = Vec::with_capacity(n);

    for j in 0..n {
        let x = &work.col(j)[j..];
        let alpha = norm2(x);
        let mut v = x.to_vec();
        if alpha == 0.0 {
            vs.push(v);
            taus.push(0.0);
            continue;
        }
        let beta = if v[0] >= 0.0 { -alpha } else { alpha };
        v[0] -= beta;
        let vnorm2 = dot(&v, &v);
        let tau = if vnorm2 > 0.0 { 2.0 / vnorm2 } else { 0.0 };
        for c in j..n {
            let col = &mut work.col_mut(c)[j..];
            let s = tau * dot(&v, col);
            axpy(-s, &v, col);
        }
        vs.push(v);
        taus.push(tau);
    }

    let mut r = DenseMatrix::zeros(n, n);
    for c in 0..n {
        for i in 0..=c {
            r[(i, c)] = work[(i, c)];
        }
    }
    // Q = H_0 H_1 … H_{n-1} applied to the leading n columns of I
    let mut q = DenseMatrix::zeros(m, n);
    for c in 0..n {
        q[(c, c)] = 1.0;
    }
    for j in (0..n).rev() {
        let v = &vs[j];
        let tau = taus[j];
        if tau == 0.0 {
            continue;
        }
        for c in j..n {
            let col = &mut q.col_mut(c)[j..];
            let s = tau * dot(v, col);
            axpy(-s, v, col);
        }
    }
    for i in 0..n {
        if r[(i, i)] < 0.0 {
            for c in i..n {
                r[(i, c)] = -r[(i, c)];
            }
            scale(-1.0, q.col_mut(i));
        }
    }
    ThinQr { q, r }
}

/// Solves `R·x = b` by back substitution for upper triangular `R`.
pub fn solve_upper(r: &DenseMatrix, b: &[f64]) -> Vec<f64> {
    let n = r.cols();
    assert_eq!(b.len(), n);
    let mut x = b.to_vec();
    for i in (0..n).rev() {
        let mut s = x[i];
        for j in i + 1..n {
            s -= r[(i, j)] * x[j];
        }
        x[i] = s / r[(i, i)];
    }
    x
}

/// Solves `R·X = B` column by column.
pub fn solve_upper_mat(r: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let cols: Vec<Vec<f64>> = b.columns().map(|c| solve_upper(r, c)).collect();
    DenseMatrix::from_columns(r.cols(), &cols)
}

/// `R⁻¹` of an upper triangular matrix, computed by back substitution.
pub fn upper_inverse(r: &DenseMatrix) -> DenseMatrix {
    solve_upper_mat(r, &DenseMatrix::identity(r.cols()))
}

/// Orthonormal basis of the column span of a full-rank `m×k` matrix, `m ≥ k`.
pub fn orthonormal_basis(m: &DenseMatrix) -> DenseMatrix {
    householder_qr(m).q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_column_is_normalized() {
        let mut qr = ThinQr::empty(3);
        qr.push_column(&[3.0, 4.0, 0.0]).unwrap();
        assert_eq!(qr.q.as_slice(), &[0.6, 0.8, 0.0]);
        assert_eq!(qr.r.as_slice(), &[5.0]);
    }

    #[test]
    fn dependent_column_is_signalled() {
        let mut qr = ThinQr::empty(3);
        qr.push_column(&[1.0, 0.0, 0.0]).unwrap();
        qr.push_column(&[1.0, 1.0, 0.0]).unwrap();
        let before = qr.clone();
        let err = qr.push_column(&[2.0, -3.0, 0.0]).unwrap_err();
        assert!(err.gamma <= RANK_TOL * err.col_norm);
        assert_eq!(qr, before);
        assert!(qr.push_column(&[0.0; 3]).is_err());
    }

    #[test]
    fn completion_keeps_q_orthonormal() {
        let mut qr = ThinQr::empty(3);
        qr.push_column(&[1.0, 1.0, 0.0]).unwrap();
        assert!(qr.push_column_or_complete(&[2.0, 2.0, 0.0]).unwrap());
        assert_eq!(qr.r[(1, 1)], 0.0);
        assert!(qr.q.orthonormality_error() < 1e-15);
        assert!(!qr.push_column_or_complete(&[1.0, -1.0, 0.0]).unwrap());
        assert_eq!(qr.k(), 3);
        assert!(qr.q.orthonormality_error() < 1e-15);
        assert!(matches!(
            qr.push_column_or_complete(&[1.0, 0.0, 0.0]),
            Err(Error::SubspaceExhausted(_))
        ));
    }

    #[test]
    fn householder_reconstructs() {
        let a = DenseMatrix::from_row_slice(4, 2, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.5]);
        let qr = householder_qr(&a);
        assert!(qr.q.orthonormality_error() < 1e-15);
        assert!(qr.q.matmul(&qr.r).sub(&a).norm_max() < 1e-14);
        assert!(qr.r[(0, 0)] >= 0.0 && qr.r[(1, 1)] >= 0.0);
        assert_eq!(qr.r[(1, 0)], 0.0);
    }

    #[test]
    fn triangular_solves() {
        let r = DenseMatrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 4.0]);
        assert_eq!(solve_upper(&r, &[5.0, 8.0]), vec![1.5, 2.0]);
        let inv = upper_inverse(&r);
        assert!(r.matmul(&inv).sub(&DenseMatrix::identity(2)).norm_max() < 1e-16);
    }
}
