//! GSVD of a dense pair through the CS decomposition of the stacked
//! orthonormal factor. Cross products `GᵀG`, `HᵀH` are never formed.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::qr::{householder_qr, solve_upper_mat};
use super::svd::jacobi_svd;
use super::DenseMatrix;
use crate::error::{Error, Result};
use crate::num::sqrt;
use crate::vecops::{axpy, dot, norm2, scale};

/// Relative rank threshold for the stacked matrix `[G; H]`.
pub const STACK_RANK_TOL: f64 = 1e-13;
/// Cosines or sines at or below this are treated as exact zeros when
/// choosing left vectors.
pub const TRIVIAL_CS_TOL: f64 = 1e-14;

const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;

/// `G·D = E·diag(sigma_g)`, `H·D = F·diag(sigma_h)` with
/// `sigma_g² + sigma_h² = 1` and `Dᵀ(GᵀG + HᵀH)D = I`.
///
/// Components are ordered by nonincreasing `θ = sigma_g / sigma_h`.
#[derive(Debug, Clone)]
pub struct DenseGsvd {
    pub sigma_g: Vec<f64>,
    pub sigma_h: Vec<f64>,
    pub e: DenseMatrix,
    pub f: DenseMatrix,
    pub d: DenseMatrix,
}

impl DenseGsvd {
    pub fn len(&self) -> usize {
        self.sigma_g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma_g.is_empty()
    }

    /// Generalized singular value of component `i`; `+∞` when `sigma_h[i] = 0`.
    pub fn theta(&self, i: usize) -> f64 {
        theta_of(self.sigma_g[i], self.sigma_h[i])
    }

    pub fn thetas(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.theta(i)).collect()
    }
}

pub(crate) fn theta_of(alpha: f64, beta: f64) -> f64 {
    if beta == 0.0 {
        f64::INFINITY
    } else {
        alpha / beta
    }
}

/// GSVD of a square `k×k` pair `(G, H)`.
pub fn dense_gsvd(g: &DenseMatrix, h: &DenseMatrix) -> Result<DenseGsvd> {
    let k = g.cols();
    if g.rows() != k || h.rows() != k || h.cols() != k {
        return Err(Error::InvalidInput("dense_gsvd expects two square matrices of equal size"));
    }
    Ok(cs_gsvd(g, h)?.gsvd)
}

/// Result of [`cs_gsvd`] together with the singular values of the stacked
/// matrix, which the caller may reuse (e.g. `‖X‖ = 1/s_min`).
#[derive(Debug, Clone)]
pub(crate) struct CsGsvd {
    pub gsvd: DenseGsvd,
    pub stacked_singular_values: Vec<f64>,
}

/// GSVD of a pair with `G` of size `m×n` and `H` of size `p×n` (any
/// `m, p` with `m + p ≥ n`).
///
/// Thin QR `[G; H] = Q·R`, split `Q = [Q₁; Q₂]`, SVD `Q₁ = E·C·Wᵀ`. Cosines
/// above `1/√2` have poorly determined sines, so for that block the basis
/// is refined by an SVD of `Q₂·W` and the cosines are recovered from the
/// sines. `D = R⁻¹·W` by back substitution.
pub(crate) fn cs_gsvd(g: &DenseMatrix, h: &DenseMatrix) -> Result<CsGsvd> {
    let n = g.cols();
    assert_eq!(h.cols(), n, "G and H must have the same number of columns");
    let (m, p) = (g.rows(), h.rows());
    if n == 0 {
        return Err(Error::InvalidInput("empty matrix pair"));
    }
    if m + p < n {
        return Err(Error::DegeneratePair {
            smallest: 0.0,
            largest: 0.0,
        });
    }

    let stacked = g.vstack(h);
    let qr = householder_qr(&stacked);
    let stacked_sv = jacobi_svd(&qr.r).s;
    let (largest, smallest) = (stacked_sv[0], stacked_sv[n - 1]);
    if !(smallest > STACK_RANK_TOL * largest) {
        return Err(Error::DegeneratePair { smallest, largest });
    }

    let q1 = qr.q.top_rows(m);
    let q2 = qr.q.row_block(m, p);

    let svd1 = svd_padded(&q1);
    let mut w = svd1.v;
    let mut alpha: Vec<f64> = svd1.s.iter().map(|&s| s.min(1.0)).collect();
    let mut beta: Vec<f64> = alpha.iter().map(|&a| sqrt((1.0 - a * a).max(0.0))).collect();
    let mut e = svd1.u;
    let mut f = DenseMatrix::zeros(p, n);

    let big: Vec<usize> = (0..n).filter(|&i| alpha[i] > FRAC_1_SQRT_2).collect();
    let small: Vec<usize> = (0..n).filter(|&i| alpha[i] <= FRAC_1_SQRT_2).collect();

    for &i in &small {
        let mut fi = q2.mul_vec(w.col(i));
        let nrm = norm2(&fi);
        if beta[i] > TRIVIAL_CS_TOL && nrm > 0.0 {
            scale(1.0 / nrm, &mut fi);
            f.col_mut(i).copy_from_slice(&fi);
        }
    }

    if !big.is_empty() {
        let w_big = w.select_cols(&big);
        let svd2 = svd_padded(&q2.matmul(&w_big));
        // ascending sines, i.e. descending cosines, to match the slot order
        let nb = big.len();
        let rev: Vec<usize> = (0..nb).rev().collect();
        let w_new = w_big.matmul(&svd2.v.select_cols(&rev));
        let f_new = svd2.u.select_cols(&rev);
        for (slot, &i) in big.iter().enumerate() {
            let s = svd2.s[nb - 1 - slot].min(1.0);
            beta[i] = s;
            alpha[i] = sqrt((1.0 - s * s).max(0.0));
            w.col_mut(i).copy_from_slice(w_new.col(slot));
            let mut ei = q1.mul_vec(w_new.col(slot));
            let nrm = norm2(&ei);
            scale(1.0 / nrm, &mut ei);
            e.col_mut(i).copy_from_slice(&ei);
            if s > TRIVIAL_CS_TOL {
                f.col_mut(i).copy_from_slice(f_new.col(slot));
            }
        }
    }

    let bad_e: Vec<usize> = (0..n).filter(|&i| !(alpha[i] > TRIVIAL_CS_TOL)).collect();
    let bad_f: Vec<usize> = (0..n).filter(|&i| !(beta[i] > TRIVIAL_CS_TOL)).collect();
    complete_columns(&mut e, &bad_e);
    complete_columns(&mut f, &bad_f);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        theta_of(alpha[b], beta[b])
            .partial_cmp(&theta_of(alpha[a], beta[a]))
            .unwrap_or(Ordering::Equal)
    });

    let w = w.select_cols(&order);
    let d = solve_upper_mat(&qr.r, &w);
    let gsvd = DenseGsvd {
        sigma_g: order.iter().map(|&i| alpha[i]).collect(),
        sigma_h: order.iter().map(|&i| beta[i]).collect(),
        e: e.select_cols(&order),
        f: f.select_cols(&order),
        d,
    };
    Ok(CsGsvd {
        gsvd,
        stacked_singular_values: stacked_sv,
    })
}

/// Thin SVD of any shape: wide inputs are padded with zero rows and the
/// padding is cut from `U` again.
fn svd_padded(m: &DenseMatrix) -> super::svd::Svd {
    if m.rows() >= m.cols() {
        return jacobi_svd(m);
    }
    let pad = DenseMatrix::zeros(m.cols() - m.rows(), m.cols());
    let mut svd = jacobi_svd(&m.vstack(&pad));
    svd.u = svd.u.top_rows(m.rows());
    svd
}

/// Replaces the listed columns by unit vectors orthogonal to every other
/// column and to the ones already replaced. Columns that cannot be
/// completed (no room left) are zeroed.
fn complete_columns(mat: &mut DenseMatrix, bad: &[usize]) {
    if bad.is_empty() {
        return;
    }
    let rows = mat.rows();
    let mut fixed: Vec<usize> = (0..mat.cols()).filter(|j| !bad.contains(j)).collect();
    for &j in bad {
        let mut best: Option<Vec<f64>> = None;
        for i in 0..rows {
            let mut e = alloc::vec![0.0; rows];
            e[i] = 1.0;
            for _ in 0..2 {
                for &c in &fixed {
                    let h = dot(mat.col(c), &e);
                    axpy(-h, mat.col(c), &mut e);
                }
            }
            let nrm = norm2(&e);
            if nrm > 0.5 {
                scale(1.0 / nrm, &mut e);
                best = Some(e);
                break;
            }
        }
        match best {
            Some(v) => mat.col_mut(j).copy_from_slice(&v),
            None => mat.col_mut(j).iter_mut().for_each(|v| *v = 0.0),
        }
        fixed.push(j);
    }
}
