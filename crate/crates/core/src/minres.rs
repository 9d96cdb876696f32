//! Matrix-free MINRES for the projected correction equations.
//!
//! The pencil `AᵀA − s·BᵀB` is only ever applied through four sparse
//! products. The deflated, projected operator
//! `(I − Yp·Xpᵀ)(AᵀA − s·BᵀB)(I − Xp·Ypᵀ)` is symmetric whenever
//! `YpᵀXp = I`, which is all MINRES needs.

use alloc::vec;
use alloc::vec::Vec;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::num::hypot;
use crate::sparse::MatrixPair;
use crate::vecops::{axpy, dot, norm2, scale};

/// A symmetric operator on `R^n`.
///
/// `project_range` pulls a vector back onto the operator's range and is
/// applied to every Lanczos vector; `project_solution` maps the final
/// iterate into the constraint space without changing `op·t`.
pub trait SymmetricOperator {
    fn dim(&self) -> usize;

    fn apply(&self, z: &[f64]) -> Vec<f64>;

    fn project_range(&self, _v: &mut [f64]) {}

    fn project_solution(&self, _t: &mut [f64]) {}
}

/// `z ↦ Aᵀ(Az) − shift·Bᵀ(Bz)`.
#[derive(Debug, Clone, Copy)]
pub struct PencilOperator<'a> {
    pair: &'a MatrixPair,
    shift: f64,
}

impl<'a> PencilOperator<'a> {
    pub fn new(pair: &'a MatrixPair, shift: f64) -> Self {
        Self { pair, shift }
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn pair(&self) -> &'a MatrixPair {
        self.pair
    }
}

impl SymmetricOperator for PencilOperator<'_> {
    fn dim(&self) -> usize {
        self.pair.n()
    }

    fn apply(&self, z: &[f64]) -> Vec<f64> {
        let (a, b) = (self.pair.a(), self.pair.b());
        let mut az = vec![0.0; a.rows()];
        let mut bz = vec![0.0; b.rows()];
        a.spmv_into(z, &mut az);
        b.spmv_into(z, &mut bz);
        let mut out = vec![0.0; z.len()];
        let mut tmp = vec![0.0; z.len()];
        a.spmv_transpose_into(&az, &mut out);
        b.spmv_transpose_into(&bz, &mut tmp);
        axpy(-self.shift, &tmp, &mut out);
        out
    }
}

/// `(I − Yp·Xpᵀ)·L·(I − Xp·Ypᵀ)` for a pencil `L`, with biorthogonal
/// `Xp`, `Yp` (`YpᵀXp = I`). Either block may have zero columns.
#[derive(Debug, Clone)]
pub struct ProjectedOperator<'a> {
    inner: PencilOperator<'a>,
    xp: DenseMatrix,
    yp: DenseMatrix,
}

impl<'a> ProjectedOperator<'a> {
    pub fn new(inner: PencilOperator<'a>, xp: DenseMatrix, yp: DenseMatrix) -> Result<Self> {
        let n = inner.dim();
        if xp.rows() != n || yp.rows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if xp.rows() != n { xp.rows() } else { yp.rows() },
            });
        }
        if xp.cols() != yp.cols() {
            return Err(Error::DimensionMismatch {
                expected: xp.cols(),
                found: yp.cols(),
            });
        }
        Ok(Self { inner, xp, yp })
    }

    /// Plain pencil, no projectors.
    pub fn unprojected(inner: PencilOperator<'a>) -> Self {
        let n = inner.dim();
        Self {
            inner,
            xp: DenseMatrix::zeros(n, 0),
            yp: DenseMatrix::zeros(n, 0),
        }
    }

    pub fn inner(&self) -> &PencilOperator<'a> {
        &self.inner
    }

    pub fn xp(&self) -> &DenseMatrix {
        &self.xp
    }

    pub fn yp(&self) -> &DenseMatrix {
        &self.yp
    }

    /// `‖YpᵀXp − I‖_max`
    pub fn biorthogonality_error(&self) -> f64 {
        self.yp
            .tr_matmul(&self.xp)
            .sub(&DenseMatrix::identity(self.xp.cols()))
            .norm_max()
    }

    /// `z ← (I − Xp·Ypᵀ)·z`, onto the orthogonal complement of `span(Yp)`.
    pub fn project_right(&self, z: &mut [f64]) {
        oblique(&self.xp, &self.yp, z);
    }

    /// `z ← (I − Yp·Xpᵀ)·z`, onto the orthogonal complement of `span(Xp)`.
    pub fn project_left(&self, z: &mut [f64]) {
        oblique(&self.yp, &self.xp, z);
    }
}

// z ← z − P·(Qᵀz)
fn oblique(p: &DenseMatrix, q: &DenseMatrix, z: &mut [f64]) {
    for j in 0..p.cols() {
        let c = dot(q.col(j), z);
        axpy(-c, p.col(j), z);
    }
}

impl SymmetricOperator for ProjectedOperator<'_> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn apply(&self, z: &[f64]) -> Vec<f64> {
        let mut w = z.to_vec();
        self.project_right(&mut w);
        let mut out = self.inner.apply(&w);
        self.project_left(&mut out);
        out
    }

    fn project_range(&self, v: &mut [f64]) {
        self.project_left(v);
    }

    fn project_solution(&self, t: &mut [f64]) {
        self.project_right(t);
    }
}

/// Same as [`SymmetricOperator::apply`] on a [`ProjectedOperator`].
pub fn apply_projected(op: &ProjectedOperator<'_>, z: &[f64]) -> Vec<f64> {
    op.apply(z)
}

#[derive(Debug, Clone)]
pub struct MinresOutcome {
    pub solution: Vec<f64>,
    /// `‖rhs − op·t‖ / ‖rhs‖`, recomputed from scratch at exit.
    pub rel_res: f64,
    pub iterations: usize,
    pub converged: bool,
    /// The Lanczos process hit an invariant subspace.
    pub breakdown: bool,
    /// Recurrence estimates of the relative residual, starting with the
    /// initial one; nonincreasing.
    pub residual_history: Vec<f64>,
}

/// Default iteration cap: `2n`, at most 10 000.
pub fn default_max_iters(n: usize) -> usize {
    (2 * n).clamp(1, 10_000)
}

/// MINRES from a zero initial guess.
///
/// The right-hand side is pulled onto the operator's range once at entry,
/// every Lanczos vector is pulled back onto it, and the returned iterate is
/// passed through `project_solution`. Stops when the relative residual
/// drops to `rel_tol`, on breakdown, or after `max_iters` iterations.
pub fn minres_solve<Op: SymmetricOperator + ?Sized>(
    op: &Op,
    rhs: &[f64],
    rel_tol: f64,
    max_iters: usize,
) -> MinresOutcome {
    minres_solve_with(op, rhs, rel_tol, max_iters, false)
}

/// [`minres_solve`] with optional full reorthogonalization of the Lanczos
/// vectors. The short recurrence loses orthogonality in floating point,
/// which can delay convergence past `n` iterations on ill-conditioned
/// systems; reorthogonalizing restores the exact-arithmetic behaviour at
/// the cost of storing every Lanczos vector.
pub fn minres_solve_with<Op: SymmetricOperator + ?Sized>(
    op: &Op,
    rhs: &[f64],
    rel_tol: f64,
    max_iters: usize,
    reorthogonalize: bool,
) -> MinresOutcome {
    let n = op.dim();
    assert_eq!(rhs.len(), n, "right-hand side length does not match the operator");
    let rhs_norm = norm2(rhs);
    if rhs_norm == 0.0 {
        return MinresOutcome {
            solution: vec![0.0; n],
            rel_res: 0.0,
            iterations: 0,
            converged: true,
            breakdown: false,
            residual_history: vec![0.0],
        };
    }

    let mut b = rhs.to_vec();
    op.project_range(&mut b);
    let beta1 = norm2(&b);
    let mut x = vec![0.0; n];
    let mut history = vec![beta1 / rhs_norm];
    if beta1 == 0.0 {
        return finish(op, rhs, rhs_norm, x, 0, rel_tol, false, history);
    }

    let mut v_prev = vec![0.0; n];
    let mut v = b;
    scale(1.0 / beta1, &mut v);
    let mut beta = 0.0;
    let mut phibar = beta1;
    let (mut cs, mut sn) = (-1.0_f64, 0.0_f64);
    let (mut dbar, mut epsln) = (0.0_f64, 0.0_f64);
    let mut w_km2 = vec![0.0; n];
    let mut w_km1 = vec![0.0; n];
    let mut op_scale = 0.0_f64;
    let mut lanczos: Vec<Vec<f64>> = Vec::new();

    for it in 1..=max_iters {
        let mut p = op.apply(&v);
        let alpha = dot(&v, &p);
        axpy(-alpha, &v, &mut p);
        if beta != 0.0 {
            axpy(-beta, &v_prev, &mut p);
        }
        op.project_range(&mut p);
        if reorthogonalize {
            lanczos.push(v.clone());
            for _ in 0..2 {
                for q in &lanczos {
                    let h = dot(q, &p);
                    axpy(-h, q, &mut p);
                }
            }
        }
        let beta_next = norm2(&p);
        op_scale = op_scale.max(hypot(hypot(alpha, beta), beta_next));

        let oldeps = epsln;
        let delta = cs * dbar + sn * alpha;
        let gbar = sn * dbar - cs * alpha;
        epsln = sn * beta_next;
        dbar = -cs * beta_next;
        let gamma = hypot(gbar, beta_next).max(f64::MIN_POSITIVE);
        cs = gbar / gamma;
        sn = beta_next / gamma;
        let phi = cs * phibar;
        phibar *= sn;

        let mut w_new = v.clone();
        axpy(-oldeps, &w_km2, &mut w_new);
        axpy(-delta, &w_km1, &mut w_new);
        scale(1.0 / gamma, &mut w_new);
        axpy(phi, &w_new, &mut x);
        w_km2 = core::mem::replace(&mut w_km1, w_new);

        history.push(phibar.abs() / rhs_norm);

        let breakdown = beta_next <= 1e-14 * op_scale;
        if breakdown || it == max_iters {
            return finish(op, rhs, rhs_norm, x, it, rel_tol, breakdown, history);
        }
        if phibar.abs() / rhs_norm <= rel_tol {
            let mut t = x.clone();
            op.project_solution(&mut t);
            if true_rel_res(op, rhs, rhs_norm, &t) <= rel_tol {
                return finish(op, rhs, rhs_norm, x, it, rel_tol, false, history);
            }
        }

        scale(1.0 / beta_next, &mut p);
        v_prev = core::mem::replace(&mut v, p);
        beta = beta_next;
    }
    finish(op, rhs, rhs_norm, x, max_iters, rel_tol, false, history)
}

#[allow(clippy::too_many_arguments)]
fn finish<Op: SymmetricOperator + ?Sized>(
    op: &Op,
    rhs: &[f64],
    rhs_norm: f64,
    mut x: Vec<f64>,
    iterations: usize,
    rel_tol: f64,
    breakdown: bool,
    residual_history: Vec<f64>,
) -> MinresOutcome {
    op.project_solution(&mut x);
    let rel_res = true_rel_res(op, rhs, rhs_norm, &x);
    MinresOutcome {
        solution: x,
        rel_res,
        iterations,
        converged: rel_res <= rel_tol,
        breakdown,
        residual_history,
    }
}

fn true_rel_res<Op: SymmetricOperator + ?Sized>(op: &Op, rhs: &[f64], rhs_norm: f64, t: &[f64]) -> f64 {
    let ot = op.apply(t);
    let r: Vec<f64> = rhs.iter().zip(&ot).map(|(b, a)| b - a).collect();
    norm2(&r) / rhs_norm
}
