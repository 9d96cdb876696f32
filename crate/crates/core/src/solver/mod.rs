//! The Jacobi–Davidson outer iteration: extraction from the projected pair,
//! convergence testing, correction equations, expansion, thick restart and
//! deflation.

mod config;
mod correction;
mod deflation;
mod driver;
mod extract;
mod state;

pub use config::{SolverConfig, StartVector};
pub use correction::{
    solve_correction, CorrectionProblem, CorrectionSolution, CorrectionSolver, MinresCorrection, RHS_ZERO_TOL,
};
pub use deflation::{ConvergedSet, DeflateOutcome, DUPLICATE_OVERLAP};
pub use driver::{run, run_with, ComponentStats, Event, IterationRecord, RunStats, INNER_TOLERANCE_RULE};
pub use extract::{
    check_outer_convergence, condition_estimate, extract_ritz, inner_tolerance, residual_threshold, select_shift,
    target_order, Extraction, RitzApproximation, ShiftChoice, INNER_TOL_CAP,
};
pub use state::{ExpandOutcome, SearchState, STALL_TOL};
