use alloc::vec;
use alloc::vec::Vec;

use super::DenseMatrix;
use crate::num::sqrt;
use crate::vecops::{axpy, dot, norm2, scale};

/// Rotations with `|uᵢᵀuⱼ| ≤ ROTATION_TOL·‖uᵢ‖‖uⱼ‖` are skipped; a sweep
/// without any rotation ends the iteration.
const ROTATION_TOL: f64 = 1e-15;
const MAX_SWEEPS: usize = 80;

/// Thin SVD `M = U·diag(s)·Vᵀ`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows×cols`, orthonormal columns.
    pub u: DenseMatrix,
    /// Nonincreasing, nonnegative.
    pub s: Vec<f64>,
    /// `cols×cols`, orthogonal.
    pub v: DenseMatrix,
}

/// One-sided (Hestenes) Jacobi SVD of a matrix with `rows ≥ cols`.
///
/// Columns of `U` belonging to exactly zero singular values are completed
/// to an orthonormal set.
pub fn jacobi_svd(m: &DenseMatrix) -> Svd {
    let (rows, cols) = (m.rows(), m.cols());
    assert!(rows >= cols, "jacobi_svd needs rows >= cols");
    let mut work = m.clone();
    let mut v = DenseMatrix::identity(cols);
    let mut norms: Vec<f64> = (0..cols).map(|j| dot(work.col(j), work.col(j))).collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..cols {
            for j in i + 1..cols {
                let alpha = norms[i];
                let beta = norms[j];
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = dot(work.col(i), work.col(j));
                if gamma.abs() <= ROTATION_TOL * sqrt(alpha) * sqrt(beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + sqrt(1.0 + zeta * zeta));
                let c = 1.0 / sqrt(1.0 + t * t);
                let s = c * t;
                rotate_cols(&mut work, i, j, c, s);
                rotate_cols(&mut v, i, j, c, s);
                norms[i] = dot(work.col(i), work.col(i));
                norms[j] = dot(work.col(j), work.col(j));
            }
        }
        if !rotated {
            break;
        }
    }

    let sv: Vec<f64> = (0..cols).map(|j| norm2(work.col(j))).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    // stable: equal values keep their sweep order
    order.sort_by(|&a, &b| sv[b].partial_cmp(&sv[a]).unwrap_or(core::cmp::Ordering::Equal));

    let s: Vec<f64> = order.iter().map(|&j| sv[j]).collect();
    let v = v.select_cols(&order);
    let mut u = DenseMatrix::zeros(rows, cols);
    let mut zero_cols = Vec::new();
    for (dst, &src) in order.iter().enumerate() {
        if sv[src] > 0.0 && sv[src].is_finite() {
            let col = u.col_mut(dst);
            col.copy_from_slice(work.col(src));
            scale(1.0 / sv[src], col);
        } else {
            zero_cols.push(dst);
        }
    }
    for dst in zero_cols {
        let filled: Vec<usize> = (0..cols).filter(|&j| norm2(u.col(j)) > 0.0).collect();
        let e = completion_vector(&u, &filled);
        u.col_mut(dst).copy_from_slice(&e);
    }
    Svd { u, s, v }
}

fn rotate_cols(m: &mut DenseMatrix, i: usize, j: usize, c: f64, s: f64) {
    debug_assert!(i < j);
    let rows = m.rows();
    let (left, right) = m.as_mut_slice().split_at_mut(j * rows);
    let ci = &mut left[i * rows..(i + 1) * rows];
    let cj = &mut right[..rows];
    for (a, b) in ci.iter_mut().zip(cj.iter_mut()) {
        let x = *a;
        let y = *b;
        *a = c * x - s * y;
        *b = s * x + c * y;
    }
}

/// Unit vector orthogonal to the listed columns of `u`.
fn completion_vector(u: &DenseMatrix, filled: &[usize]) -> Vec<f64> {
    let rows = u.rows();
    let mut best = (0, f64::NEG_INFINITY);
    for i in 0..rows {
        let inside: f64 = filled.iter().map(|&j| u[(i, j)] * u[(i, j)]).sum();
        if 1.0 - inside > best.1 {
            best = (i, 1.0 - inside);
        }
    }
    let mut e = vec![0.0; rows];
    e[best.0] = 1.0;
    for _ in 0..2 {
        for &j in filled {
            let h = dot(u.col(j), &e);
            axpy(-h, u.col(j), &mut e);
        }
    }
    let nrm = norm2(&e);
    scale(1.0 / nrm, &mut e);
    e
}
