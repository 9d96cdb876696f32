use alloc::vec::Vec;

use super::deflation::ConvergedSet;
use super::extract::RitzApproximation;
use crate::dense::DenseMatrix;
use crate::minres::{minres_solve, PencilOperator, ProjectedOperator};
use crate::sparse::MatrixPair;
use crate::vecops::norm2;

/// Right-hand sides below this fraction of `‖r‖` are treated as zero.
pub const RHS_ZERO_TOL: f64 = 1e-15;

/// The projected system
/// `(I − Yp·Xpᵀ)(AᵀA − shift·BᵀB)(I − Xp·Ypᵀ)·t = rhs` with
/// `Xp = [X_c, x̃]`, `Yp = [Y_c, ỹ]` and `rhs = −(I − Y_c·X_cᵀ)·r`.
#[derive(Debug, Clone)]
pub struct CorrectionProblem<'a> {
    pub pair: &'a MatrixPair,
    pub shift: f64,
    pub xp: DenseMatrix,
    pub yp: DenseMatrix,
    pub rhs: Vec<f64>,
    pub rel_tol: f64,
    pub max_iters: usize,
}

impl<'a> CorrectionProblem<'a> {
    pub fn new(
        pair: &'a MatrixPair,
        ritz: &RitzApproximation,
        conv: &ConvergedSet,
        shift: f64,
        rel_tol: f64,
        max_iters: usize,
    ) -> Self {
        let mut xp = conv.x_c().clone();
        xp.push_col(&ritz.x);
        let mut yp = conv.y_c().clone();
        yp.push_col(&ritz.y);
        let mut rhs: Vec<f64> = ritz.r.iter().map(|v| -v).collect();
        conv.project_rhs(&mut rhs);
        Self {
            pair,
            shift,
            xp,
            yp,
            rhs,
            rel_tol,
            max_iters,
        }
    }

    pub fn operator(&self) -> ProjectedOperator<'a> {
        ProjectedOperator::new(PencilOperator::new(self.pair, self.shift), self.xp.clone(), self.yp.clone())
            .expect("blocks built with matching shapes")
    }
}

#[derive(Debug, Clone)]
pub struct CorrectionSolution {
    pub t: Vec<f64>,
    pub iterations: usize,
    /// Relative residual of the returned `t`.
    pub rel_res: f64,
    /// The iteration cap ended the solve before the tolerance was met.
    pub hit_cap: bool,
}

/// Solver for the correction equation. [`MinresCorrection`] is the
/// default; tests substitute exact dense solves.
pub trait CorrectionSolver {
    fn solve(&mut self, problem: &CorrectionProblem<'_>) -> CorrectionSolution;
}

/// MINRES from a zero initial guess.
#[derive(Debug, Clone, Copy, Default)]
pub struct MinresCorrection;

impl CorrectionSolver for MinresCorrection {
    fn solve(&mut self, problem: &CorrectionProblem<'_>) -> CorrectionSolution {
        let op = problem.operator();
        let out = minres_solve(&op, &problem.rhs, problem.rel_tol, problem.max_iters);
        CorrectionSolution {
            hit_cap: !out.converged && !out.breakdown && out.iterations >= problem.max_iters,
            t: out.solution,
            iterations: out.iterations,
            rel_res: out.rel_res,
        }
    }
}

/// Builds the projected system for `ritz` and solves it with `solver`. A
/// right-hand side that vanishes relative to `‖r‖` gives `t = 0`, which
/// the expansion step replaces by a random direction.
pub fn solve_correction(
    solver: &mut dyn CorrectionSolver,
    pair: &MatrixPair,
    ritz: &RitzApproximation,
    conv: &ConvergedSet,
    shift: f64,
    rel_tol: f64,
    max_iters: usize,
) -> CorrectionSolution {
    let problem = CorrectionProblem::new(pair, ritz, conv, shift, rel_tol, max_iters);
    if !(norm2(&problem.rhs) > RHS_ZERO_TOL * ritz.r_norm) {
        return CorrectionSolution {
            t: alloc::vec![0.0; pair.n()],
            iterations: 0,
            rel_res: 0.0,
            hit_cap: false,
        };
    }
    solver.solve(&problem)
}
