use alloc::vec::Vec;
use core::cmp::Ordering;

use super::config::SolverConfig;
use super::state::SearchState;
use crate::dense::{dense_gsvd, DenseGsvd};
use crate::error::{Error, Result};
use crate::num::distance_key;
use crate::sparse::MatrixPair;
use crate::vecops::{axpy, norm2};

/// Approximate GSVD component from the search subspace: `A·x̃ = α̃·ũ`,
/// `B·x̃ = β̃·ṽ`, residual `r = β̃·Aᵀũ − α̃·Bᵀṽ ⊥ X̃` and
/// `ỹ = α̃·Aᵀũ + β̃·Bᵀṽ` with `ỹᵀx̃ = 1`.
#[derive(Debug, Clone)]
pub struct RitzApproximation {
    pub alpha: f64,
    pub beta: f64,
    /// `α̃/β̃`, `+∞` when `β̃ = 0`.
    pub theta: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub r: Vec<f64>,
    pub r_norm: f64,
}

/// Projected GSVD together with the component picked from it.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub ritz: RitzApproximation,
    pub gsvd: DenseGsvd,
    /// Component indices of `gsvd` sorted by distance to the target; the
    /// first is the one in `ritz`.
    pub order: Vec<usize>,
}

impl Extraction {
    /// Projected values `θ_i` in target order, the selected one first.
    pub fn ordered_thetas(&self) -> Vec<f64> {
        self.order.iter().map(|&i| self.gsvd.theta(i)).collect()
    }
}

/// Sorts indices of `thetas` by `|θ − τ|`, ties to the smaller `θ`, with
/// infinite values last. Distances within `1e-12·τ` of each other are
/// ties.
pub fn target_order(thetas: &[f64], tau: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..thetas.len()).collect();
    idx.sort_by(|&i, &j| {
        distance_key(thetas[i], tau)
            .partial_cmp(&distance_key(thetas[j], tau))
            .unwrap_or(Ordering::Equal)
            .then(thetas[i].partial_cmp(&thetas[j]).unwrap_or(Ordering::Equal))
    });
    idx
}

/// GSVD of the projected pair `(G, H)` and the Ritz approximation whose
/// `θ` is closest to `τ`.
pub fn extract_ritz(state: &SearchState, pair: &MatrixPair, tau: f64) -> Result<Extraction> {
    if state.k() == 0 {
        return Err(Error::InvalidInput("cannot extract from an empty subspace"));
    }
    let gsvd = dense_gsvd(state.g(), state.h())?;
    let order = target_order(&gsvd.thetas(), tau);
    let sel = order[0];
    let alpha = gsvd.sigma_g[sel];
    let beta = gsvd.sigma_h[sel];
    let u = state.u_basis().mul_vec(gsvd.e.col(sel));
    let v = state.v_basis().mul_vec(gsvd.f.col(sel));
    let x = state.x_basis().mul_vec(gsvd.d.col(sel));
    let atu = pair.a().spmv_transpose(&u)?;
    let btv = pair.b().spmv_transpose(&v)?;
    let mut r: Vec<f64> = atu.iter().map(|a| beta * a).collect();
    axpy(-alpha, &btv, &mut r);
    let mut y: Vec<f64> = atu.iter().map(|a| alpha * a).collect();
    axpy(beta, &btv, &mut y);
    let r_norm = norm2(&r);
    let ritz = RitzApproximation {
        alpha,
        beta,
        theta: gsvd.theta(sel),
        u,
        v,
        x,
        y,
        r,
        r_norm,
    };
    Ok(Extraction { ritz, gsvd, order })
}

/// `(β̃‖A‖₁ + α̃‖B‖₁)·level`
pub fn residual_threshold(ritz: &RitzApproximation, pair: &MatrixPair, level: f64) -> f64 {
    (ritz.beta * pair.norm1_a() + ritz.alpha * pair.norm1_b()) * level
}

/// Outer stopping test `‖r‖ ≤ (β̃‖A‖₁ + α̃‖B‖₁)·tol`. A component with
/// `θ = ∞` is never accepted.
pub fn check_outer_convergence(ritz: &RitzApproximation, pair: &MatrixPair, cfg: &SolverConfig) -> bool {
    ritz.theta.is_finite() && ritz.r_norm <= residual_threshold(ritz, pair, cfg.tol)
}

/// Which correction equation expands the subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftChoice {
    /// Shift `τ²`.
    Target,
    /// Shift `θ²` of the current Ritz value.
    Ritz,
}

impl ShiftChoice {
    pub fn shift(self, ritz: &RitzApproximation, tau: f64) -> f64 {
        match self {
            ShiftChoice::Target => tau * tau,
            ShiftChoice::Ritz => ritz.theta * ritz.theta,
        }
    }
}

/// Uses the `θ²` equation once `‖r‖ ≤ (β̃‖A‖₁ + α̃‖B‖₁)·fixtol` and `θ`
/// is finite; `fixtol = 0` never switches.
pub fn select_shift(ritz: &RitzApproximation, pair: &MatrixPair, cfg: &SolverConfig) -> ShiftChoice {
    if !ritz.theta.is_finite() || cfg.fixtol == 0.0 {
        return ShiftChoice::Target;
    }
    if cfg.fixtol == f64::INFINITY || ritz.r_norm <= residual_threshold(ritz, pair, cfg.fixtol) {
        ShiftChoice::Ritz
    } else {
        ShiftChoice::Target
    }
}

/// Upper limit on the inner tolerance of the fixed-target equation.
pub const INNER_TOL_CAP: f64 = 0.01;

/// Condition estimate `c_τ = est_norm/est_sep` for the fixed-target
/// equation. `thetas[0]` is the selected Ritz value, the rest are the other
/// projected values.
pub fn condition_estimate(thetas: &[f64], tau: f64) -> f64 {
    let tau2 = tau * tau;
    // (θ² + 1)/(θ² − τ²); ∞ for θ = τ, limit 1 for θ = ∞
    let rho = |t: f64| {
        if t.is_infinite() {
            1.0
        } else {
            let d = t * t - tau2;
            if d == 0.0 {
                f64::INFINITY
            } else {
                (t * t + 1.0) / d
            }
        }
    };
    let rho1 = rho(thetas[0]);
    if rho1.is_infinite() {
        // both estimates are dominated by the same unbounded term
        return 1.0;
    }
    let est_norm = thetas
        .iter()
        .map(|&t| rho(t).abs())
        .fold((1.0 / tau2).max(1.0), f64::max);
    let est_sep = thetas[1..]
        .iter()
        .map(|&t| rho(t))
        .filter(|r| r.is_finite())
        .map(|r| (rho1 - r).abs())
        .fold((rho1 + 1.0 / tau2).abs().min((rho1 - 1.0).abs()), f64::min);
    est_norm / est_sep
}

/// Relative residual the inner solve must reach: `2ε̃` for the `θ²`
/// equation, `min(2·c_τ·ε̃, 0.01)` for the `τ²` equation.
pub fn inner_tolerance(thetas: &[f64], cfg: &SolverConfig, choice: ShiftChoice) -> f64 {
    match choice {
        ShiftChoice::Ritz => 2.0 * cfg.eps_tilde,
        ShiftChoice::Target => {
            let c = condition_estimate(thetas, cfg.tau);
            let t = 2.0 * c * cfg.eps_tilde;
            if t.is_nan() {
                INNER_TOL_CAP
            } else {
                t.min(INNER_TOL_CAP)
            }
        }
    }
}
