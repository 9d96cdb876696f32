use alloc::vec::Vec;

use super::extract::RitzApproximation;
use crate::dense::{householder_qr, DenseMatrix};
use crate::num::sqrt;
use crate::sparse::MatrixPair;
use crate::vecops::{axpy, dot, norm2};

/// Overlap `|x̃ᵀY_c|` above which a newly converged vector is reported as a
/// probable repeat of an earlier component.
pub const DUPLICATE_OVERLAP: f64 = 1e-6;

/// Converged components `(c_i, s_i, u_i, v_i, x_i)` with
/// `y_i = c_i·Aᵀu_i + s_i·Bᵀv_i`, so that `Y_cᵀX_c ≈ I`.
#[derive(Debug, Clone)]
pub struct ConvergedSet {
    c: Vec<f64>,
    s: Vec<f64>,
    u: DenseMatrix,
    v: DenseMatrix,
    x: DenseMatrix,
    y: DenseMatrix,
    // orthonormal basis of span(Y_c)
    y_orth: DenseMatrix,
}

/// What [`ConvergedSet::deflate`] noticed about the appended component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeflateOutcome {
    /// Largest `|x̃ᵀy_i|` over the previously converged `y_i`.
    pub overlap: f64,
    pub duplicate: bool,
}

impl ConvergedSet {
    pub fn new(m: usize, p: usize, n: usize) -> Self {
        Self {
            c: Vec::new(),
            s: Vec::new(),
            u: DenseMatrix::zeros(m, 0),
            v: DenseMatrix::zeros(p, 0),
            x: DenseMatrix::zeros(n, 0),
            y: DenseMatrix::zeros(n, 0),
            y_orth: DenseMatrix::zeros(n, 0),
        }
    }

    pub fn for_pair(pair: &MatrixPair) -> Self {
        Self::new(pair.m(), pair.p(), pair.n())
    }

    /// Number of converged components.
    pub fn j(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn u_c(&self) -> &DenseMatrix {
        &self.u
    }

    pub fn v_c(&self) -> &DenseMatrix {
        &self.v
    }

    pub fn x_c(&self) -> &DenseMatrix {
        &self.x
    }

    pub fn y_c(&self) -> &DenseMatrix {
        &self.y
    }

    pub(crate) fn y_orth(&self) -> &DenseMatrix {
        &self.y_orth
    }

    /// `σ_i = c_i/s_i`, `+∞` for `s_i = 0`.
    pub fn sigmas(&self) -> Vec<f64> {
        self.c
            .iter()
            .zip(&self.s)
            .map(|(&c, &s)| if s == 0.0 { f64::INFINITY } else { c / s })
            .collect()
    }

    /// Appends a converged Ritz approximation.
    pub fn deflate(&mut self, ritz: &RitzApproximation) -> DeflateOutcome {
        let overlap = self
            .y
            .columns()
            .map(|y| dot(y, &ritz.x).abs())
            .fold(0.0, f64::max);
        let sign = canonical_sign(&ritz.x);
        let flip = |w: &[f64]| w.iter().map(|v| sign * v).collect::<Vec<f64>>();
        self.c.push(ritz.alpha);
        self.s.push(ritz.beta);
        self.u.push_col(&flip(&ritz.u));
        self.v.push_col(&flip(&ritz.v));
        self.x.push_col(&flip(&ritz.x));
        self.y.push_col(&flip(&ritz.y));
        self.y_orth = householder_qr(&self.y).q;
        DeflateOutcome {
            overlap,
            duplicate: overlap > DUPLICATE_OVERLAP,
        }
    }

    /// `z ← z − Y_c·(X_cᵀz)`
    pub fn project_rhs(&self, z: &mut [f64]) {
        for (x, y) in self.x.columns().zip(self.y.columns()) {
            let h = dot(x, z);
            axpy(-h, y, z);
        }
    }

    /// `‖Y_cᵀX_c − I‖_max`
    pub fn biorthogonality_error(&self) -> f64 {
        self.y
            .tr_matmul(&self.x)
            .sub(&DenseMatrix::identity(self.j()))
            .norm_max()
    }

    /// `‖Aᵀ·U_c·S_c − Bᵀ·V_c·C_c‖_F`
    pub fn residual_frobenius(&self, pair: &MatrixPair) -> f64 {
        let mut ssq = 0.0;
        for i in 0..self.j() {
            let mut r = pair.a().spmv_transpose(self.u.col(i)).expect("shape checked");
            let btv = pair.b().spmv_transpose(self.v.col(i)).expect("shape checked");
            r.iter_mut().for_each(|v| *v *= self.s[i]);
            axpy(-self.c[i], &btv, &mut r);
            let nr = norm2(&r);
            ssq += nr * nr;
        }
        sqrt(ssq)
    }

    /// `√(j·(‖A‖₁² + ‖B‖₁²))·tol`, the bound the Frobenius residual obeys
    /// when every component passed the outer stopping test.
    pub fn frobenius_bound(&self, pair: &MatrixPair, tol: f64) -> f64 {
        let (na, nb) = (pair.norm1_a(), pair.norm1_b());
        sqrt(self.j() as f64 * (na * na + nb * nb)) * tol
    }
}

// ±1 making the first entry of largest magnitude positive. Accepted
// triples are stored in this sign so that runs differing only by rounding
// report the same vectors.
fn canonical_sign(x: &[f64]) -> f64 {
    let mut best = 0.0_f64;
    let mut sign = 1.0;
    for &v in x {
        if v.abs() > best {
            best = v.abs();
            sign = if v < 0.0 { -1.0 } else { 1.0 };
        }
    }
    sign
}
