#![allow(dead_code)]

use jdgsvd_core::generators::{gen_b0, gen_b1, random_sparse};
use jdgsvd_core::solver::{CorrectionProblem, CorrectionSolution, CorrectionSolver};
use jdgsvd_core::{DenseMatrix, MatrixPair, SparseMatrix};
use nalgebra::{DMatrix, DVector};

pub fn to_na(m: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_column_slice(m.rows(), m.cols(), m.as_slice())
}

pub fn sparse_to_na(m: &SparseMatrix) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(m.rows(), m.cols());
    for (r, c, v) in m.triplets() {
        out[(r, c)] = v;
    }
    out
}

pub fn from_na(m: &DMatrix<f64>) -> DenseMatrix {
    DenseMatrix::from_col_major(m.nrows(), m.ncols(), m.as_slice().to_vec())
}

/// Which `B` a random instance uses.
#[derive(Debug, Clone, Copy)]
pub enum BKind {
    B0,
    B1,
    Random,
}

pub fn random_pair(m: usize, p: usize, n: usize, kind: BKind, seed: u64) -> MatrixPair {
    let a = random_sparse(m, n, 0.05, seed).unwrap();
    let b = match kind {
        BKind::B0 => gen_b0(n).unwrap(),
        BKind::B1 => gen_b1(n).unwrap(),
        BKind::Random => random_sparse(p, n, 0.05, seed ^ 0x5eed).unwrap(),
    };
    MatrixPair::new(a, b).unwrap()
}

/// Dense `AᵀA − shift·BᵀB`.
pub fn dense_pencil(pair: &MatrixPair, shift: f64) -> DMatrix<f64> {
    let a = sparse_to_na(pair.a());
    let b = sparse_to_na(pair.b());
    a.transpose() * &a - (b.transpose() * &b) * shift
}

/// Exact solution of the projected correction equation:
/// `t = L⁻¹(rhs + Yp·μ)` with `μ` chosen so that `Ypᵀt = 0`.
pub fn exact_correction(problem: &CorrectionProblem<'_>) -> Vec<f64> {
    let l = dense_pencil(problem.pair, problem.shift).lu();
    let yp = to_na(&problem.yp);
    let rhs = DVector::from_column_slice(&problem.rhs);
    let l_rhs = l.solve(&rhs).unwrap();
    let l_yp = l.solve(&yp).unwrap();
    let mu = (yp.transpose() * &l_yp).lu().solve(&(-(yp.transpose() * &l_rhs))).unwrap();
    let t = l_rhs + l_yp * mu;
    t.as_slice().to_vec()
}

/// Correction solver that uses [`exact_correction`].
pub struct DenseExact;

impl CorrectionSolver for DenseExact {
    fn solve(&mut self, problem: &CorrectionProblem<'_>) -> CorrectionSolution {
        CorrectionSolution {
            t: exact_correction(problem),
            iterations: 0,
            rel_res: 0.0,
            hit_cap: false,
        }
    }
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(f64::MIN_POSITIVE)
}
