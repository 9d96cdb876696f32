mod common;

use common::{random_pair, sparse_to_na, to_na, BKind, DenseExact};
use jdgsvd_core::oracle::{closest_to_target, dense_full_gsvd};
use jdgsvd_core::solver::{
    check_outer_convergence, condition_estimate, extract_ritz, inner_tolerance, run, run_with, select_shift,
    solve_correction, target_order, ConvergedSet, Event, MinresCorrection, RitzApproximation, SearchState,
    ShiftChoice, SolverConfig, StartVector,
};
use jdgsvd_core::vecops::{dot, norm2, sub};
use jdgsvd_core::{Error, MatrixPair, SparseMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(42)
}

fn random_vec(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// State of dimension `k` grown from the all-ones vector by random directions.
fn grown_state(pair: &MatrixPair, conv: &ConvergedSet, k: usize, rng: &mut ChaCha8Rng) -> SearchState {
    let x0 = StartVector::Ones.build(pair.n()).unwrap();
    let (mut state, _) = SearchState::initialize(pair, &x0, conv, rng).unwrap();
    while state.k() < k {
        let t = random_vec(pair.n(), rng);
        state.expand(pair, &t, conv, rng).unwrap();
    }
    state
}

fn norm_sum(pair: &MatrixPair) -> f64 {
    pair.norm1_a() + pair.norm1_b()
}

fn assert_state_invariants(state: &SearchState, pair: &MatrixPair, conv: &ConvergedSet) {
    assert!(state.factorization_error(pair) <= 1e-11 * norm_sum(pair));
    assert!(state.orthonormality_error() <= 1e-12);
    if !conv.is_empty() {
        let cross = state.x_basis().tr_matmul(conv.y_c());
        assert!(cross.norm_max() <= 1e-10 * norm2(conv.y_c().as_slice()));
    }
    for j in 0..state.k() {
        for i in j + 1..state.k() {
            assert_eq!(state.g()[(i, j)], 0.0);
            assert_eq!(state.h()[(i, j)], 0.0);
        }
    }
}

fn synthetic_ritz(alpha: f64, beta: f64, r_norm: f64) -> RitzApproximation {
    RitzApproximation {
        alpha,
        beta,
        theta: if beta == 0.0 { f64::INFINITY } else { alpha / beta },
        u: vec![],
        v: vec![],
        x: vec![],
        y: vec![],
        r: vec![],
        r_norm,
    }
}

#[test]
fn initialize_uses_the_start_vector() {
    let pair = MatrixPair::new(SparseMatrix::identity(4), SparseMatrix::identity(4)).unwrap();
    let conv = ConvergedSet::for_pair(&pair);
    let x0 = StartVector::Ones.build(4).unwrap();
    let (state, out) = SearchState::initialize(&pair, &x0, &conv, &mut rng()).unwrap();
    assert!(!out.fallback);
    assert_eq!(state.k(), 1);
    assert_eq!(state.x_basis().as_slice(), &[0.5; 4]);
}

#[test]
fn initialize_rejects_a_common_null_vector() {
    let a = SparseMatrix::from_diagonal(&[1.0, 0.0]);
    let b = SparseMatrix::from_diagonal(&[2.0, 0.0]);
    let pair = MatrixPair::new(a, b).unwrap();
    let conv = ConvergedSet::for_pair(&pair);
    let res = SearchState::initialize(&pair, &[0.0, 1.0], &conv, &mut rng());
    assert!(matches!(res, Err(Error::RegularityViolation)));
}

#[test]
fn initialize_after_deflation_is_orthogonal_to_yc() {
    let pair = random_pair(80, 70, 60, BKind::Random, 1);
    let mut conv = ConvergedSet::for_pair(&pair);
    let mut r = rng();
    let state = grown_state(&pair, &conv, 6, &mut r);
    let ext = extract_ritz(&state, &pair, 0.8).unwrap();
    conv.deflate(&ext.ritz);
    let x0 = StartVector::Ones.build(pair.n()).unwrap();
    assert!(dot(&x0, conv.y_c().col(0)).abs() > 1e-3);
    let (fresh, _) = SearchState::initialize(&pair, &x0, &conv, &mut r).unwrap();
    let overlap = dot(fresh.x_basis().col(0), conv.y_c().col(0)).abs();
    assert!(overlap <= 1e-12 * norm2(conv.y_c().col(0)));
}

#[test]
fn one_dimensional_extraction_is_a_norm_ratio() {
    let pair = random_pair(50, 40, 30, BKind::Random, 2);
    let conv = ConvergedSet::for_pair(&pair);
    let x0 = StartVector::Ones.build(30).unwrap();
    let (state, _) = SearchState::initialize(&pair, &x0, &conv, &mut rng()).unwrap();
    let ext = extract_ritz(&state, &pair, 1.0).unwrap();
    let ax = norm2(&pair.a().spmv(&x0).unwrap());
    let bx = norm2(&pair.b().spmv(&x0).unwrap());
    assert!((ext.ritz.theta - ax / bx).abs() <= 1e-13 * ext.ritz.theta);
    let x = &ext.ritz.x;
    assert!((norm2(&pair.a().spmv(x).unwrap()) - ext.ritz.alpha).abs() <= 1e-13);
    assert!((norm2(&pair.b().spmv(x).unwrap()) - ext.ritz.beta).abs() <= 1e-13);
}

#[test]
fn selection_follows_the_distance_rule() {
    let order = target_order(&[1.93, 3.92, 4.12], 4.0);
    assert_eq!(order[0], 1);
    // infinite values are never preferred, zero is eligible, ties go low
    assert_eq!(target_order(&[f64::INFINITY, 0.0], 0.5), vec![1, 0]);
    assert_eq!(target_order(&[3.0, 1.0], 2.0), vec![1, 0]);
}

#[test]
fn extraction_matches_projected_pencil_and_is_galerkin() {
    let pair = random_pair(120, 90, 80, BKind::B0, 3);
    let conv = ConvergedSet::for_pair(&pair);
    let mut r = rng();
    let state = grown_state(&pair, &conv, 12, &mut r);
    let ext = extract_ritz(&state, &pair, 0.6).unwrap();
    let ritz = &ext.ritz;

    // θ² is an eigenvalue of (X̃ᵀAᵀAX̃, X̃ᵀBᵀBX̃)
    let (a, b, x) = (sparse_to_na(pair.a()), sparse_to_na(pair.b()), to_na(state.x_basis()));
    let (ax, bx) = (&a * &x, &b * &x);
    let (m1, m2) = (ax.transpose() * &ax, bx.transpose() * &bx);
    let l = m2.cholesky().unwrap().l();
    let linv = l.try_inverse().unwrap();
    let sym = &linv * m1 * linv.transpose();
    let sym = (&sym + sym.transpose()) * 0.5;
    let nearest = sym
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|v| v.max(0.0).sqrt())
        .min_by(|p, q| (p - 0.6).abs().partial_cmp(&(q - 0.6).abs()).unwrap())
        .unwrap();
    assert!((ritz.theta - nearest).abs() <= 1e-10 * nearest);

    let scale = norm_sum(&pair);
    let xr = state.x_basis().tr_mul_vec(&ritz.r);
    assert!(norm2(&xr) <= 1e-10 * scale);
    assert!((dot(&ritz.y, &ritz.x) - 1.0).abs() <= 1e-10);
    assert!((norm2(&ritz.u) - 1.0).abs() <= 1e-12 && (norm2(&ritz.v) - 1.0).abs() <= 1e-12);
    assert!((ritz.alpha.powi(2) + ritz.beta.powi(2) - 1.0).abs() <= 1e-13);
    let mut r2: Vec<f64> = pair.a().spmv_transpose(&ritz.u).unwrap().iter().map(|v| v * ritz.beta).collect();
    let btv = pair.b().spmv_transpose(&ritz.v).unwrap();
    r2.iter_mut().zip(&btv).for_each(|(p, q)| *p -= ritz.alpha * q);
    assert!(norm2(&sub(&r2, &ritz.r)) <= 1e-13 * scale);
    // A·x̃ = α̃·ũ
    let ax = pair.a().spmv(&ritz.x).unwrap();
    let au: Vec<f64> = ritz.u.iter().map(|v| v * ritz.alpha).collect();
    assert!(norm2(&sub(&ax, &au)) <= 1e-12 * scale);
}

#[test]
fn outer_convergence_threshold() {
    let pair = random_pair(30, 30, 20, BKind::Random, 4);
    let mut cfg = SolverConfig::new(1.0, 1);
    cfg.tol = 1e-8;
    let (alpha, beta) = (0.6, 0.8);
    let threshold = (beta * pair.norm1_a() + alpha * pair.norm1_b()) * cfg.tol;
    assert!(check_outer_convergence(&synthetic_ritz(alpha, beta, 0.0), &pair, &cfg));
    assert!(check_outer_convergence(&synthetic_ritz(alpha, beta, threshold), &pair, &cfg));
    let above = threshold * (1.0 + 1e-12);
    assert!(!check_outer_convergence(&synthetic_ritz(alpha, beta, above), &pair, &cfg));
    assert!(!check_outer_convergence(&synthetic_ritz(1.0, 0.0, 0.0), &pair, &cfg));
}

#[test]
fn shift_selection() {
    let pair = MatrixPair::new(SparseMatrix::identity(3), SparseMatrix::identity(3)).unwrap();
    let mut cfg = SolverConfig::new(1.0, 1);
    // ‖A‖₁ = ‖B‖₁ = 1, β̃ + α̃ = 1.4: relative residual 1e-5
    let ritz = synthetic_ritz(0.6, 0.8, 1.4e-5);
    assert_eq!(select_shift(&ritz, &pair, &cfg), ShiftChoice::Ritz);
    let loose = synthetic_ritz(0.6, 0.8, 1.4e-3);
    assert_eq!(select_shift(&loose, &pair, &cfg), ShiftChoice::Target);
    cfg.fixtol = 0.0;
    assert_eq!(select_shift(&ritz, &pair, &cfg), ShiftChoice::Target);
    cfg.fixtol = f64::INFINITY;
    assert_eq!(select_shift(&loose, &pair, &cfg), ShiftChoice::Ritz);
    assert_eq!(select_shift(&synthetic_ritz(1.0, 0.0, 0.0), &pair, &cfg), ShiftChoice::Target);
}

#[test]
fn inner_tolerance_rules() {
    let cfg = SolverConfig::new(1.0, 1);
    assert_eq!(inner_tolerance(&[0.3, 2.0], &cfg, ShiftChoice::Ritz), 2e-3);
    // k = 1, τ = 1: θ² = 3 gives c_τ = 2, θ² = 39 gives c_τ = 20
    let c2 = condition_estimate(&[3f64.sqrt()], 1.0);
    assert!((c2 - 2.0).abs() < 1e-14);
    assert!((inner_tolerance(&[3f64.sqrt()], &cfg, ShiftChoice::Target) - 4e-3).abs() < 1e-16);
    let c20 = condition_estimate(&[39f64.sqrt()], 1.0);
    assert!((c20 - 20.0).abs() < 1e-12);
    assert_eq!(inner_tolerance(&[39f64.sqrt()], &cfg, ShiftChoice::Target), 0.01);
    // an extra Ritz value tightens the separation
    assert!(condition_estimate(&[3f64.sqrt(), 1.8], 1.0) > c2);
    // a projected value exactly at the target dominates the norm estimate
    assert_eq!(inner_tolerance(&[3f64.sqrt(), 1.0], &cfg, ShiftChoice::Target), 0.01);
}

#[test]
fn correction_without_deflation() {
    let pair = random_pair(100, 80, 70, BKind::B1, 5);
    let conv = ConvergedSet::for_pair(&pair);
    let mut r = rng();
    let state = grown_state(&pair, &conv, 5, &mut r);
    let ext = extract_ritz(&state, &pair, 0.9).unwrap();
    let ritz = &ext.ritz;
    let problem = jdgsvd_core::solver::CorrectionProblem::new(&pair, ritz, &conv, 0.81, 1e-14, 1000);
    let neg: Vec<f64> = ritz.r.iter().map(|v| -v).collect();
    assert_eq!(problem.rhs, neg);

    let sol = solve_correction(&mut MinresCorrection, &pair, ritz, &conv, 0.81, 1e-14, 10_000);
    assert!(dot(&ritz.y, &sol.t).abs() <= 1e-12 * norm2(&sol.t) * norm2(&ritz.y));
    let exact = common::exact_correction(&problem);
    let err = norm2(&sub(&sol.t, &exact)) / norm2(&exact);
    assert!(err <= 1e-8, "{err:e}");
}

#[test]
fn correction_with_deflation_keeps_constraints() {
    let pair = random_pair(100, 80, 70, BKind::Random, 6);
    let cfg = SolverConfig::new(0.7, 2);
    let (conv, _) = run(&pair, &cfg).unwrap();
    let mut r = rng();
    let state = grown_state(&pair, &conv, 6, &mut r);
    let ext = extract_ritz(&state, &pair, 0.7).unwrap();
    let sol = solve_correction(&mut MinresCorrection, &pair, &ext.ritz, &conv, 0.49, 1e-10, 10_000);
    let t = &sol.t;
    for y in conv.y_c().columns().chain(std::iter::once(ext.ritz.y.as_slice())) {
        assert!(dot(y, t).abs() <= 1e-12 * norm2(t) * norm2(y));
    }
}

#[test]
fn expansion_cases() {
    let pair = random_pair(60, 50, 40, BKind::Random, 7);
    let conv = ConvergedSet::for_pair(&pair);
    let mut r = rng();
    let mut state = grown_state(&pair, &conv, 3, &mut r);

    // t ⊥ X̃ is taken as is, up to normalization
    let mut t = random_vec(40, &mut r);
    for c in state.x_basis().columns() {
        let h = dot(c, &t);
        t.iter_mut().zip(c).for_each(|(a, b)| *a -= h * b);
    }
    let out = state.expand(&pair, &t, &conv, &mut r).unwrap();
    assert!(!out.fallback);
    let nt = norm2(&t);
    let added = state.x_basis().col(3);
    for (a, b) in added.iter().zip(&t) {
        assert!((a - b / nt).abs() <= 1e-14);
    }

    // t in span(X̃) triggers the random fallback
    let inside = state.x_basis().mul_vec(&[1.0, -2.0, 0.5, 3.0]);
    let out = state.expand(&pair, &inside, &conv, &mut r).unwrap();
    assert!(out.fallback);
    assert_eq!(state.k(), 5);
    assert_state_invariants(&state, &pair, &conv);

    for seed in 0..5 {
        let pair = random_pair(90, 70, 60, BKind::Random, 100 + seed);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let state = grown_state(&pair, &conv_for(&pair), 20, &mut r);
        assert_state_invariants(&state, &pair, &conv_for(&pair));
    }
}

fn conv_for(pair: &MatrixPair) -> ConvergedSet {
    ConvergedSet::for_pair(pair)
}

#[test]
fn thick_restart_keeps_the_selected_ritz_value() {
    let pair = random_pair(120, 100, 90, BKind::B0, 8);
    let conv = ConvergedSet::for_pair(&pair);
    let mut r = rng();
    let mut state = grown_state(&pair, &conv, 30, &mut r);
    let before = extract_ritz(&state, &pair, 0.75).unwrap();
    state.compress(&before.gsvd, &before.order[..3]);
    assert_eq!(state.k(), 3);
    assert_state_invariants(&state, &pair, &conv);
    let after = extract_ritz(&state, &pair, 0.75).unwrap();
    assert!((after.ritz.theta - before.ritz.theta).abs() <= 1e-12 * before.ritz.theta);
    let kept: Vec<f64> = before.ordered_thetas()[..3].to_vec();
    let mut now = after.ordered_thetas();
    now.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut want = kept.clone();
    want.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (a, b) in now.iter().zip(&want) {
        assert!((a - b).abs() <= 1e-12 * b);
    }
}

#[test]
fn purge_removes_the_converged_direction() {
    let pair = random_pair(120, 100, 90, BKind::Random, 9);
    let conv = ConvergedSet::for_pair(&pair);
    let mut r = rng();
    let mut state = grown_state(&pair, &conv, 10, &mut r);
    let ext = extract_ritz(&state, &pair, 0.5).unwrap();
    state.compress(&ext.gsvd, &ext.order[1..]);
    assert_eq!(state.k(), 9);
    assert_state_invariants(&state, &pair, &conv);
    let proj = state.x_basis().tr_mul_vec(&ext.ritz.y);
    assert!(norm2(&proj) <= 1e-10 * norm2(&ext.ritz.y));

    // k = 2: the survivor is the other projected component
    let mut small = grown_state(&pair, &conv, 2, &mut r);
    let ext = extract_ritz(&small, &pair, 0.5).unwrap();
    let other = ext.gsvd.theta(ext.order[1]);
    small.compress(&ext.gsvd, &ext.order[1..]);
    let again = extract_ritz(&small, &pair, 0.5).unwrap();
    assert!((again.ritz.theta - other).abs() <= 1e-12 * other);

    // k = 1 purges to an empty state
    let mut one = grown_state(&pair, &conv, 1, &mut r);
    let ext = extract_ritz(&one, &pair, 0.5).unwrap();
    one.compress(&ext.gsvd, &ext.order[1..]);
    assert_eq!(one.k(), 0);
}

#[test]
fn deflation_set_invariants_and_duplicates() {
    let pair = random_pair(80, 70, 60, BKind::B0, 10);
    let mut conv = ConvergedSet::for_pair(&pair);
    let state = grown_state(&pair, &conv, 8, &mut rng());
    let ext = extract_ritz(&state, &pair, 0.9).unwrap();
    let out = conv.deflate(&ext.ritz);
    assert!(!out.duplicate);
    assert_eq!(conv.j(), 1);
    assert!(conv.biorthogonality_error() <= 1e-10);
    let again = conv.deflate(&ext.ritz);
    assert!(again.duplicate);
}

#[test]
fn diagonal_pair_reaches_seven() {
    let a: Vec<f64> = (1..=10).map(|v| v as f64).collect();
    let pair = MatrixPair::new(SparseMatrix::from_diagonal(&a), SparseMatrix::identity(10)).unwrap();
    let mut cfg = SolverConfig::new(7.0, 1);
    cfg.k_max = 8;
    let (conv, stats) = run(&pair, &cfg).unwrap();
    assert!(stats.converged);
    assert!((conv.sigmas()[0] - 7.0).abs() < 1e-8);
    assert!(stats.outer_iterations <= 10);
    let last = stats.history.last().unwrap();
    assert!(last.r_norm <= (last.beta * pair.norm1_a() + last.alpha * pair.norm1_b()) * cfg.tol);
}

fn assert_converged_set(conv: &ConvergedSet, pair: &MatrixPair, tol: f64) {
    let scale = norm_sum(pair);
    for i in 0..conv.j() {
        let (c, s) = (conv.c()[i], conv.s()[i]);
        assert!((c * c + s * s - 1.0).abs() <= 1e-12);
        let ax = pair.a().spmv(conv.x_c().col(i)).unwrap();
        let bx = pair.b().spmv(conv.x_c().col(i)).unwrap();
        let cu: Vec<f64> = conv.u_c().col(i).iter().map(|v| v * c).collect();
        let sv: Vec<f64> = conv.v_c().col(i).iter().map(|v| v * s).collect();
        assert!(norm2(&sub(&ax, &cu)) <= tol * scale);
        assert!(norm2(&sub(&bx, &sv)) <= tol * scale);
    }
    assert!(conv.biorthogonality_error() <= 1e-9);
    assert!(conv.residual_frobenius(pair) <= conv.frobenius_bound(pair, tol));
}

#[test]
fn five_components_match_the_oracle() {
    for (seed, kind) in [(11u64, BKind::B0), (12, BKind::B1), (13, BKind::Random)] {
        let pair = random_pair(160, 130, 110, kind, seed);
        let oracle = dense_full_gsvd(&pair).unwrap();
        let nt = oracle.nontrivial();
        let tau = oracle.sigmas[nt[nt.len() / 3]] * 0.99;
        let mut cfg = SolverConfig::new(tau, 5);
        if matches!(kind, BKind::B1) {
            cfg.x0 = StartVector::Mod4;
        }
        let (conv, stats) = run(&pair, &cfg).unwrap();
        assert!(stats.converged);
        assert_converged_set(&conv, &pair, cfg.tol);
        let want = closest_to_target(&oracle, tau, 5);
        for (g, &w) in conv.sigmas().iter().zip(&want) {
            assert!((g - oracle.sigmas[w]).abs() <= 1e-8 * oracle.sigmas[w]);
        }
        // k grows by one per outer iteration except at restarts and purges
        for w in stats.history.windows(2) {
            let (p, q) = (&w[0], &w[1]);
            if p.shift.is_none() {
                assert_eq!(q.k, p.k - 1);
            } else if p.restarted {
                assert_eq!(q.k, cfg.k_min + 1);
            } else {
                assert_eq!(q.k, p.k + 1);
            }
        }
    }
}

#[test]
fn rerun_is_idempotent() {
    let pair = random_pair(100, 90, 80, BKind::Random, 14);
    let cfg = SolverConfig::new(0.8, 3);
    let (first, s1) = run(&pair, &cfg).unwrap();
    let (second, s2) = run(&pair, &cfg).unwrap();
    assert_eq!(first.sigmas(), second.sigmas());
    assert_eq!(s1, s2);
    // stored components still pass the acceptance test
    for i in 0..first.j() {
        let (c, s) = (first.c()[i], first.s()[i]);
        let mut r: Vec<f64> = pair.a().spmv_transpose(first.u_c().col(i)).unwrap();
        r.iter_mut().for_each(|v| *v *= s);
        let btv = pair.b().spmv_transpose(first.v_c().col(i)).unwrap();
        r.iter_mut().zip(&btv).for_each(|(a, b)| *a -= c * b);
        let ritz = synthetic_ritz(c, s, norm2(&r));
        assert!(check_outer_convergence(&ritz, &pair, &cfg));
    }
}

#[test]
fn exact_inner_solves_match_the_dense_closed_form() {
    for (seed, kind) in [(15u64, BKind::Random), (16, BKind::B0)] {
        let pair = random_pair(120, 100, 90, kind, seed);
        let mut cfg = SolverConfig::new(0.7, 1);
        cfg.inner_tol_override = Some(1e-14);
        cfg.max_outer = 10;
        let (_, iterative) = run(&pair, &cfg).unwrap();
        let (_, exact) = run_with(&pair, &cfg, &mut DenseExact).unwrap();
        let n = iterative.history.len().min(exact.history.len()).min(10);
        assert!(n >= 3);
        for (a, b) in iterative.history[..n].iter().zip(&exact.history[..n]) {
            assert!((a.theta - b.theta).abs() <= 1e-8 * b.theta, "{} vs {}", a.theta, b.theta);
        }
    }
}

#[test]
fn scaling_the_pair_scales_only_x() {
    // converged x agree to about 10·tol between the runs; tol = 1e-12 puts
    // that below the 1e-10 requirement
    for seed in 17..21u64 {
        let pair = random_pair(100, 80, 70, BKind::Random, seed);
        let mut cfg = SolverConfig::new(0.6, 3);
        cfg.tol = 1e-12;
        let (base, s1) = run(&pair, &cfg).unwrap();
        let (scaled, s2) = run(&pair.scaled(10.0), &cfg).unwrap();
        assert!(s1.converged && s2.converged);
        for i in 0..3 {
            assert!((base.c()[i] - scaled.c()[i]).abs() <= 1e-12);
            assert!((base.s()[i] - scaled.s()[i]).abs() <= 1e-12);
            let x = base.x_c().col(i);
            let xs: Vec<f64> = scaled.x_c().col(i).iter().map(|v| v * 10.0).collect();
            assert!(norm2(&sub(x, &xs)) <= 1e-10 * norm2(x));
        }
    }
}

#[test]
fn outer_limit_is_reported() {
    let pair = random_pair(100, 80, 70, BKind::Random, 18);
    let mut cfg = SolverConfig::new(0.6, 2);
    cfg.max_outer = 2;
    let (conv, stats) = run(&pair, &cfg).unwrap();
    assert!(!stats.converged);
    assert!(conv.j() < 2);
    assert!(stats.events.iter().any(|e| matches!(e, Event::OuterLimit { .. })));
    assert!(!stats.components.last().unwrap().converged);
}

#[test]
fn small_dimensions_clamp_k_max() {
    let a = jdgsvd_core::generators::random_sparse(8, 40, 0.3, 3).unwrap();
    let b = jdgsvd_core::generators::gen_b0(40).unwrap();
    let pair = MatrixPair::new(a, b).unwrap();
    let cfg = SolverConfig::new(0.3, 1);
    let (_, stats) = run(&pair, &cfg).unwrap();
    assert_eq!(stats.k_max, 8);
    assert!(stats.events.contains(&Event::KmaxClamped { requested: 30, used: 8 }));
}

#[test]
fn invalid_configurations_are_rejected() {
    let pair = random_pair(30, 30, 20, BKind::Random, 19);
    let mut cfg = SolverConfig::new(1.0, 1);
    cfg.k_min = 30;
    assert!(matches!(run(&pair, &cfg), Err(Error::InvalidConfig(_))));
    let cfg = SolverConfig::new(1.0, 21);
    assert!(matches!(run(&pair, &cfg), Err(Error::InvalidConfig(_))));
    let cfg = SolverConfig::new(0.0, 1);
    assert!(run(&pair, &cfg).is_err());
}
