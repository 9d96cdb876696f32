use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::SolverConfig;
use super::correction::{solve_correction, CorrectionSolver, MinresCorrection};
use super::deflation::ConvergedSet;
use super::extract::{check_outer_convergence, extract_ritz, inner_tolerance, select_shift, ShiftChoice};
use super::state::{ExpandOutcome, SearchState};
use crate::error::{Error, Result};
use crate::minres::default_max_iters;
use crate::sparse::MatrixPair;
use crate::vecops::norm2;

/// Inner tolerance rule used for the fixed-target equation.
pub const INNER_TOLERANCE_RULE: &str = "min(2*c_tau*eps_tilde, 0.01)";

/// Noteworthy things that happened during a run. None of them is fatal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Event {
    /// `k_max` was lowered to fit the dimensions of the pair.
    KmaxClamped { requested: usize, used: usize },
    /// The expansion vector lay in the search subspace; a random one was used.
    ExpansionFallback { iteration: usize },
    /// `A·x₊` (`matrix = 'A'`) or `B·x₊` was dependent on the existing left
    /// basis.
    DegenerateFactor { iteration: usize, matrix: char },
    /// MINRES stopped at its iteration cap above the requested tolerance.
    InnerIterationCap { iteration: usize, rel_res: f64 },
    /// A converged vector overlaps an earlier converged component.
    DuplicateConvergence { component: usize, overlap: f64 },
    /// The component ran out of outer iterations.
    OuterLimit { component: usize },
}

/// One extraction step. `shift` is `None` when the extracted approximation
/// converged and no correction equation was solved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    /// Outer iteration count at this point, over all components.
    pub iteration: usize,
    /// Index of the component being sought.
    pub component: usize,
    /// Subspace dimension at extraction.
    pub k: usize,
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub r_norm: f64,
    /// `‖x̃‖`
    pub x_norm: f64,
    pub shift: Option<ShiftChoice>,
    pub inner_tol: f64,
    pub inner_iterations: usize,
    pub inner_rel_res: f64,
    pub restarted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentStats {
    pub outer_iterations: usize,
    pub inner_iterations: usize,
    pub residual_norm: f64,
    pub sigma: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    /// Total outer iterations.
    pub outer_iterations: usize,
    /// Total MINRES iterations.
    pub inner_iterations: usize,
    pub restarts: usize,
    /// `k_max` actually used.
    pub k_max: usize,
    /// One entry per converged component, plus one for the component that
    /// ran out of iterations, if any.
    pub components: Vec<ComponentStats>,
    pub history: Vec<IterationRecord>,
    pub events: Vec<Event>,
    /// All `ℓ` components converged.
    pub converged: bool,
    pub inner_tolerance_rule: &'static str,
}

/// Computes the `cfg.ell` components nearest `cfg.tau` with MINRES inner
/// solves.
pub fn run(pair: &MatrixPair, cfg: &SolverConfig) -> Result<(ConvergedSet, RunStats)> {
    run_with(pair, cfg, &mut MinresCorrection)
}

/// Like [`run`] with a caller-supplied correction-equation solver.
pub fn run_with(
    pair: &MatrixPair,
    cfg: &SolverConfig,
    solver: &mut dyn CorrectionSolver,
) -> Result<(ConvergedSet, RunStats)> {
    let n = pair.n();
    cfg.validate(n)?;
    let k_max = cfg.k_max.min(pair.m()).min(pair.p()).min(n);
    if k_max <= cfg.k_min {
        return Err(Error::InvalidConfig("k_max must exceed k_min after fitting the matrix dimensions"));
    }
    let max_inner = cfg.inner_max_iters.unwrap_or_else(|| default_max_iters(n));
    let x0 = cfg.x0.build(n)?;

    let mut stats = RunStats {
        outer_iterations: 0,
        inner_iterations: 0,
        restarts: 0,
        k_max,
        components: Vec::new(),
        history: Vec::new(),
        events: Vec::new(),
        converged: false,
        inner_tolerance_rule: INNER_TOLERANCE_RULE,
    };
    if k_max < cfg.k_max {
        stats.events.push(Event::KmaxClamped {
            requested: cfg.k_max,
            used: k_max,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut conv = ConvergedSet::for_pair(pair);
    let mut state = SearchState::empty(pair);
    let (mut comp_outer, mut comp_inner) = (0usize, 0usize);

    while conv.j() < cfg.ell {
        if state.k() == 0 {
            let (s, out) = SearchState::initialize(pair, &x0, &conv, &mut rng)?;
            state = s;
            note_expansion(&mut stats, out);
        }
        let ext = extract_ritz(&state, pair, cfg.tau)?;
        let ritz = &ext.ritz;
        let mut record = IterationRecord {
            iteration: stats.outer_iterations,
            component: conv.j(),
            k: state.k(),
            theta: ritz.theta,
            alpha: ritz.alpha,
            beta: ritz.beta,
            r_norm: ritz.r_norm,
            x_norm: norm2(&ritz.x),
            shift: None,
            inner_tol: 0.0,
            inner_iterations: 0,
            inner_rel_res: 0.0,
            restarted: false,
        };

        if check_outer_convergence(ritz, pair, cfg) {
            stats.history.push(record);
            let out = conv.deflate(ritz);
            if out.duplicate {
                stats.events.push(Event::DuplicateConvergence {
                    component: conv.j() - 1,
                    overlap: out.overlap,
                });
            }
            stats.components.push(ComponentStats {
                outer_iterations: comp_outer,
                inner_iterations: comp_inner,
                residual_norm: ritz.r_norm,
                sigma: ritz.theta,
                converged: true,
            });
            (comp_outer, comp_inner) = (0, 0);
            state.compress(&ext.gsvd, &ext.order[1..]);
            continue;
        }

        if comp_outer >= cfg.max_outer {
            stats.history.push(record);
            stats.events.push(Event::OuterLimit { component: conv.j() });
            stats.components.push(ComponentStats {
                outer_iterations: comp_outer,
                inner_iterations: comp_inner,
                residual_norm: ritz.r_norm,
                sigma: ritz.theta,
                converged: false,
            });
            return Ok((conv, stats));
        }
        comp_outer += 1;
        stats.outer_iterations += 1;
        let iteration = stats.outer_iterations;
        record.iteration = iteration;

        let choice = select_shift(ritz, pair, cfg);
        let rel_tol = match cfg.inner_tol_override {
            Some(t) => t,
            None => inner_tolerance(&ext.ordered_thetas(), cfg, choice),
        };
        let sol = solve_correction(
            solver,
            pair,
            ritz,
            &conv,
            choice.shift(ritz, cfg.tau),
            rel_tol,
            max_inner,
        );
        comp_inner += sol.iterations;
        stats.inner_iterations += sol.iterations;
        if sol.hit_cap {
            stats.events.push(Event::InnerIterationCap {
                iteration,
                rel_res: sol.rel_res,
            });
        }

        let k_limit = k_max.min(n - conv.j());
        if state.k() >= k_limit {
            let keep = cfg.k_min.min(k_limit.saturating_sub(1));
            state.compress(&ext.gsvd, &ext.order[..keep]);
            stats.restarts += 1;
            record.restarted = true;
        }
        let out = state.expand(pair, &sol.t, &conv, &mut rng)?;
        note_expansion(&mut stats, out);

        record.shift = Some(choice);
        record.inner_tol = rel_tol;
        record.inner_iterations = sol.iterations;
        record.inner_rel_res = sol.rel_res;
        stats.history.push(record);
    }
    stats.converged = true;
    Ok((conv, stats))
}

fn note_expansion(stats: &mut RunStats, out: ExpandOutcome) {
    let iteration = stats.outer_iterations;
    if out.fallback {
        stats.events.push(Event::ExpansionFallback { iteration });
    }
    if out.degenerate_a {
        stats.events.push(Event::DegenerateFactor { iteration, matrix: 'A' });
    }
    if out.degenerate_b {
        stats.events.push(Event::DegenerateFactor { iteration, matrix: 'B' });
    }
}
