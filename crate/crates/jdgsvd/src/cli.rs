//! Command-line options, input loading and the solve-and-report pipeline.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, ValueEnum};
use jdgsvd_core::oracle::{closest_to_target, dense_full_gsvd, MAX_ORACLE_DIM};
use jdgsvd_core::solver::{run, ConvergedSet, Event, RunStats, SolverConfig, StartVector};
use jdgsvd_core::vecops::sin_angle;
use jdgsvd_core::{generators, mtx, DenseMatrix, MatrixPair, SparseMatrix};

use crate::report::{
    ComponentRecord, ConfigEcho, GlobalStats, InputEcho, Report, Status, Validation, ValidationRecord, VectorPaths,
};

/// Process exit codes.
pub mod exit {
    /// All requested components converged.
    pub const SUCCESS: i32 = 0;
    /// The report could not be written.
    pub const IO: i32 = 1;
    /// Bad flags, unreadable inputs or inconsistent dimensions.
    pub const USAGE: i32 = 2;
    /// The outer iteration limit was reached; the report is still written.
    pub const NOT_CONVERGED: i32 = 3;
    /// The solver failed; the report carries the error.
    pub const SOLVER_FAILURE: i32 = 4;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BGen {
    /// `n×n` tridiagonal Toeplitz, diagonal 3, off-diagonals 1.
    B0,
    /// `(n−1)×n` first differences.
    B1,
    /// `(n−2)×n` second differences.
    B2,
}

/// Partial GSVD of a sparse pair `(A, B)`: the components whose
/// generalized singular values are nearest a target.
#[derive(Debug, Clone, Parser)]
#[command(name = "jdgsvd", version)]
pub struct Args {
    /// Matrix Market file holding `A`.
    #[arg(long, value_name = "PATH")]
    pub matrix_a: PathBuf,

    /// Matrix Market file holding `B`.
    #[arg(long, value_name = "PATH", conflicts_with = "b_gen", required_unless_present = "b_gen")]
    pub matrix_b: Option<PathBuf>,

    /// Generate `B` to match the column count of `A`.
    #[arg(long, value_enum)]
    pub b_gen: Option<BGen>,

    /// Use the transpose of the matrix read from `--matrix-a`.
    #[arg(long)]
    pub transpose_a: bool,

    /// Target `τ > 0`.
    #[arg(long, value_parser = positive_real)]
    pub tau: f64,

    /// Number of components `ℓ`.
    #[arg(long, default_value_t = 1)]
    pub num: usize,

    /// Outer stopping tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,

    /// Subspace dimension kept at a restart.
    #[arg(long, default_value_t = 3)]
    pub kmin: usize,

    /// Subspace dimension that triggers a restart.
    #[arg(long, default_value_t = 30)]
    pub kmax: usize,

    /// Residual level at which the shift switches from `τ` to `θ`; `0`
    /// never switches, `inf` always does.
    #[arg(long, default_value_t = 1e-4)]
    pub fixtol: f64,

    /// Inner accuracy parameter.
    #[arg(long, default_value_t = 1e-3)]
    pub eps_tilde: f64,

    /// Outer iteration limit per component.
    #[arg(long, default_value_t = 500)]
    pub max_outer: usize,

    /// Seed for fallback expansion directions.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Start vector: `ones`, `mod4`, or `file:PATH` (Matrix Market array).
    #[arg(long, default_value = "ones", value_parser = parse_x0)]
    pub x0: X0,

    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Write `U.mtx`, `V.mtx` and `X.mtx` of the converged components here.
    #[arg(long, value_name = "DIR")]
    pub vectors: Option<PathBuf>,

    /// Compare with a dense GSVD (only for `n ≤ 600`).
    #[arg(long)]
    pub validate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum X0 {
    Ones,
    Mod4,
    File(PathBuf),
}

impl X0 {
    fn label(&self) -> String {
        match self {
            X0::Ones => "ones".into(),
            X0::Mod4 => "mod4".into(),
            X0::File(p) => format!("file:{}", p.display()),
        }
    }
}

fn positive_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("must be a positive finite number".into())
    }
}

fn parse_x0(s: &str) -> Result<X0, String> {
    match s {
        "ones" => Ok(X0::Ones),
        "mod4" => Ok(X0::Mod4),
        _ => match s.strip_prefix("file:") {
            Some(p) if !p.is_empty() => Ok(X0::File(PathBuf::from(p))),
            _ => Err("expected ones, mod4 or file:PATH".into()),
        },
    }
}

/// Failure before a report exists.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io { .. } => exit::IO,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Reads a Matrix Market file as a sparse matrix.
pub fn read_matrix(path: &Path) -> Result<SparseMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    mtx::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Writes text to a file, creating nothing but the file itself.
pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads `(A, B)` as described by the flags.
pub fn load_pair(args: &Args) -> Result<(MatrixPair, String), CliError> {
    let mut a = read_matrix(&args.matrix_a)?;
    if args.transpose_a {
        a = a.transpose();
    }
    let n = a.cols();
    let (b, b_label) = match (&args.matrix_b, args.b_gen) {
        (Some(path), _) => (read_matrix(path)?, path.display().to_string()),
        (None, Some(kind)) => {
            let b = match kind {
                BGen::B0 => generators::gen_b0(n),
                BGen::B1 => generators::gen_b1(n),
                BGen::B2 => {
                    if n < 3 {
                        return Err(usage("--b-gen b2 needs A to have at least 3 columns"));
                    }
                    generators::gen_b2(n - 2)
                }
            }
            .map_err(|e| usage(format!("--b-gen: {e}")))?;
            let label = match kind {
                BGen::B0 => "gen:b0",
                BGen::B1 => "gen:b1",
                BGen::B2 => "gen:b2",
            };
            (b, label.to_string())
        }
        (None, None) => return Err(usage("one of --matrix-b or --b-gen is required")),
    };
    let pair = MatrixPair::new(a, b).map_err(|e| usage(format!("A and B do not conform: {e}")))?;
    Ok((pair, b_label))
}

/// Solver configuration from the flags.
pub fn build_config(args: &Args, n: usize) -> Result<SolverConfig, CliError> {
    let mut cfg = SolverConfig::new(args.tau, args.num);
    cfg.tol = args.tol;
    cfg.k_min = args.kmin;
    cfg.k_max = args.kmax;
    cfg.fixtol = args.fixtol;
    cfg.eps_tilde = args.eps_tilde;
    cfg.max_outer = args.max_outer;
    cfg.seed = args.seed;
    cfg.x0 = match &args.x0 {
        X0::Ones => StartVector::Ones,
        X0::Mod4 => StartVector::Mod4,
        X0::File(path) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let d = mtx::parse_dense(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            if d.cols() != 1 || d.rows() != n {
                return Err(usage(format!("--x0 file must hold an {n}×1 array")));
            }
            StartVector::Custom(d.as_slice().to_vec())
        }
    };
    cfg.validate(n).map_err(|e| usage(e.to_string()))?;
    Ok(cfg)
}

/// Report text and exit code of a completed invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

/// Human-readable form of a solver event.
pub fn describe_event(e: &Event) -> String {
    match *e {
        Event::KmaxClamped { requested, used } => format!("kmax_clamped requested={requested} used={used}"),
        Event::ExpansionFallback { iteration } => format!("expansion_fallback iteration={iteration}"),
        Event::DegenerateFactor { iteration, matrix } => {
            format!("degenerate_factor iteration={iteration} matrix={matrix}")
        }
        Event::InnerIterationCap { iteration, rel_res } => {
            format!("inner_iteration_cap iteration={iteration} rel_res={rel_res:e}")
        }
        Event::DuplicateConvergence { component, overlap } => {
            format!("duplicate_convergence component={component} overlap={overlap:e}")
        }
        Event::OuterLimit { component } => format!("outer_limit component={component}"),
    }
}

fn component_records(conv: &ConvergedSet, stats: &RunStats) -> Vec<ComponentRecord> {
    stats
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let (alpha, beta) = if i < conv.j() {
                (conv.c()[i], conv.s()[i])
            } else {
                stats.history.last().map_or((f64::NAN, f64::NAN), |h| (h.alpha, h.beta))
            };
            ComponentRecord {
                alpha,
                beta,
                sigma: c.sigma,
                residual_norm: c.residual_norm,
                outer_iterations: c.outer_iterations,
                inner_iterations: c.inner_iterations,
                converged: c.converged,
            }
        })
        .collect()
}

/// Compares the converged components with the dense oracle's nearest ones.
pub fn validate(pair: &MatrixPair, conv: &ConvergedSet, tau: f64) -> Result<Validation, String> {
    let oracle = dense_full_gsvd(pair).map_err(|e| e.to_string())?;
    let picks = closest_to_target(&oracle, tau, conv.j());
    let components: Vec<ValidationRecord> = picks
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            let want = oracle.sigmas[w];
            let got = conv.sigmas()[i];
            ValidationRecord {
                oracle_sigma: want,
                sigma_error: if want == 0.0 { got.abs() } else { (got - want).abs() / want },
                sin_u: sin_angle(conv.u_c().col(i), oracle.u.col(w)),
                sin_v: sin_angle(conv.v_c().col(i), oracle.v.col(w)),
                sin_x: sin_angle(conv.x_c().col(i), oracle.x.col(w)),
            }
        })
        .collect();
    let max_sigma_error = components.iter().map(|c| c.sigma_error).fold(0.0, f64::max);
    Ok(Validation {
        components,
        max_sigma_error,
    })
}

fn write_vectors(dir: &Path, conv: &ConvergedSet) -> Result<VectorPaths, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut paths = Vec::new();
    for (name, m) in [("U.mtx", conv.u_c()), ("V.mtx", conv.v_c()), ("X.mtx", conv.x_c())] {
        let path = dir.join(name);
        write_text(&path, &mtx::write_array(m))?;
        paths.push(path.display().to_string());
    }
    let mut it = paths.into_iter();
    let mut next = || it.next().unwrap_or_default();
    Ok(VectorPaths {
        u: next(),
        v: next(),
        x: next(),
    })
}

/// Loads the inputs, runs the solver and assembles the report. Vectors
/// are written when requested; the report itself is left to the caller.
pub fn run_solve(args: &Args) -> Result<Outcome, CliError> {
    let (pair, b_label) = load_pair(args)?;
    let cfg = build_config(args, pair.n())?;
    let started = Instant::now();
    let result = run(&pair, &cfg);
    let wall_time_s = started.elapsed().as_secs_f64();

    let mut report = Report {
        status: Status::Failed,
        error: None,
        config: ConfigEcho {
            tau: cfg.tau,
            num: cfg.ell,
            tol: cfg.tol,
            kmin: cfg.k_min,
            kmax: cfg.k_max,
            kmax_used: cfg.k_max.min(pair.m()).min(pair.p()).min(pair.n()),
            fixtol: cfg.fixtol,
            eps_tilde: cfg.eps_tilde,
            max_outer: cfg.max_outer,
            seed: cfg.seed,
            x0: args.x0.label(),
            inner_tolerance_rule: jdgsvd_core::solver::INNER_TOLERANCE_RULE.into(),
        },
        input: InputEcho {
            a: args.matrix_a.display().to_string(),
            b: b_label,
            transpose_a: args.transpose_a,
            m: pair.m(),
            p: pair.p(),
            n: pair.n(),
            norm1_a: pair.norm1_a(),
            norm1_b: pair.norm1_b(),
        },
        stats: GlobalStats {
            outer_iterations: 0,
            inner_iterations: 0,
            restarts: 0,
            wall_time_s,
        },
        components: Vec::new(),
        warnings: Vec::new(),
        validation: None,
        vectors: None,
    };

    let (conv, stats) = match result {
        Ok(v) => v,
        Err(e) => {
            report.error = Some(e.to_string());
            return Ok(Outcome {
                report,
                exit_code: exit::SOLVER_FAILURE,
            });
        }
    };
    report.status = if stats.converged {
        Status::Converged
    } else {
        Status::NotConverged
    };
    report.config.kmax_used = stats.k_max;
    report.stats.outer_iterations = stats.outer_iterations;
    report.stats.inner_iterations = stats.inner_iterations;
    report.stats.restarts = stats.restarts;
    report.components = component_records(&conv, &stats);
    report.warnings = stats.events.iter().map(describe_event).collect();

    if args.validate {
        if pair.n() > MAX_ORACLE_DIM {
            report
                .warnings
                .push(format!("validation_skipped n={} limit={MAX_ORACLE_DIM}", pair.n()));
        } else {
            match validate(&pair, &conv, cfg.tau) {
                Ok(v) => report.validation = Some(v),
                Err(e) => report.warnings.push(format!("validation_failed {e}")),
            }
        }
    }
    if let Some(dir) = &args.vectors {
        report.vectors = Some(write_vectors(dir, &conv)?);
    }
    let exit_code = if stats.converged {
        exit::SUCCESS
    } else {
        exit::NOT_CONVERGED
    };
    Ok(Outcome { report, exit_code })
}

/// Full invocation: solve, then write the report to `--output` or return
/// it for standard output.
pub fn execute(args: &Args) -> Result<(Outcome, Option<String>), CliError> {
    let outcome = run_solve(args)?;
    let text = outcome.report.emit();
    match &args.output {
        Some(path) => {
            write_text(path, &text)?;
            Ok((outcome, None))
        }
        None => Ok((outcome, Some(text))),
    }
}

/// Reads back a dense Matrix Market array written by `--vectors`.
pub fn read_dense(path: &Path) -> Result<DenseMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    mtx::parse_dense(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}
