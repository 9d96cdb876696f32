//! Dense ground truth for small problems: the full GSVD of `(A, B)`, the
//! a-posteriori bound relating a Ritz value's residual to the nearest exact
//! generalized singular value, and target-ordered selection.
//!
//! Everything here densifies the pair and is meant for `n` up to a few
//! hundred. The solver never calls into this module.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::dense::{cs_gsvd, DenseMatrix};
use crate::error::{Error, Result};
use crate::num::{distance_key, sqrt};
use crate::sparse::MatrixPair;

/// Largest `n` accepted by [`dense_full_gsvd`].
pub const MAX_ORACLE_DIM: usize = 600;

/// Below this, `α` (resp. `β`) counts as zero and `σ` as trivial.
pub const TRIVIAL_TOL: f64 = 1e-12;

/// Classification of one exact component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triviality {
    Nontrivial,
    /// `α ≈ 0`, `σ = 0`.
    Zero,
    /// `β ≈ 0`, `σ = ∞`.
    Infinite,
}

/// `Uᵀ·A·X = diag(α)`, `Vᵀ·B·X = diag(β)` with `α² + β² = 1`, columns by
/// nonincreasing `σ = α/β`.
#[derive(Debug, Clone)]
pub struct FullGsvd {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub sigmas: Vec<f64>,
    pub x: DenseMatrix,
    pub u: DenseMatrix,
    pub v: DenseMatrix,
    /// `‖X‖₂ = 1/σ_min([A; B])`.
    pub norm_x: f64,
    pub kinds: Vec<Triviality>,
}

impl FullGsvd {
    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// Indices of the nontrivial components.
    pub fn nontrivial(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.kinds[i] == Triviality::Nontrivial)
            .collect()
    }

    /// Smallest and largest nontrivial `σ`.
    pub fn nontrivial_range(&self) -> Option<(f64, f64)> {
        let nt = self.nontrivial();
        let lo = nt.iter().map(|&i| self.sigmas[i]).fold(f64::INFINITY, f64::min);
        let hi = nt.iter().map(|&i| self.sigmas[i]).fold(0.0, f64::max);
        (!nt.is_empty()).then_some((lo, hi))
    }
}

/// Full GSVD of a pair with `n ≤ 600`.
pub fn dense_full_gsvd(pair: &MatrixPair) -> Result<FullGsvd> {
    let n = pair.n();
    if n > MAX_ORACLE_DIM {
        return Err(Error::TooLarge {
            n,
            limit: MAX_ORACLE_DIM,
        });
    }
    let a = pair.a().to_dense();
    let b = pair.b().to_dense();
    let out = cs_gsvd(&a, &b).map_err(|e| match e {
        Error::DegeneratePair { .. } => Error::RegularityViolation,
        other => other,
    })?;
    let g = out.gsvd;
    let smin = out.stacked_singular_values[n - 1];
    let kinds = g
        .sigma_g
        .iter()
        .zip(&g.sigma_h)
        .map(|(&a, &b)| {
            if b < TRIVIAL_TOL {
                Triviality::Infinite
            } else if a < TRIVIAL_TOL {
                Triviality::Zero
            } else {
                Triviality::Nontrivial
            }
        })
        .collect::<Vec<_>>();
    let sigmas = kinds
        .iter()
        .enumerate()
        .map(|(i, k)| match k {
            Triviality::Infinite => f64::INFINITY,
            Triviality::Zero => 0.0,
            Triviality::Nontrivial => g.sigma_g[i] / g.sigma_h[i],
        })
        .collect();
    Ok(FullGsvd {
        alphas: g.sigma_g,
        betas: g.sigma_h,
        sigmas,
        x: g.d,
        u: g.e,
        v: g.f,
        norm_x: 1.0 / smin,
        kinds,
    })
}

/// Which window of the bound a Ritz value falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundCase {
    /// Interior: some nontrivial `σ` is close to `θ`.
    Interior,
    /// `θ ≥ √(1 + 2σ_max²)`.
    AboveRange,
    /// `θ ≤ σ_min / √(2 + σ_min²)`.
    BelowRange,
    /// No nontrivial `σ` exists.
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub case: BoundCase,
    pub lhs: f64,
    /// `‖X‖²·‖r‖/‖x̃‖`
    pub rhs: f64,
}

impl BoundReport {
    /// `rhs − lhs`; nonnegative when the bound holds.
    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }

    pub fn holds(&self, additive_slack: f64) -> bool {
        self.case == BoundCase::NotApplicable || self.lhs <= self.rhs + additive_slack
    }
}

/// Evaluates the residual bound for a Ritz value `θ` with residual norm
/// `r_norm` and right vector norm `x_tilde_norm`.
pub fn theorem2_bound(theta: f64, r_norm: f64, x_tilde_norm: f64, oracle: &FullGsvd) -> BoundReport {
    let rhs = oracle.norm_x * oracle.norm_x * r_norm / x_tilde_norm;
    let Some((smin, smax)) = oracle.nontrivial_range() else {
        return BoundReport {
            case: BoundCase::NotApplicable,
            lhs: 0.0,
            rhs,
        };
    };
    let upper = sqrt(1.0 + 2.0 * smax * smax);
    let lower = smin / sqrt(2.0 + smin * smin);
    let (case, lhs) = if theta >= upper {
        (BoundCase::AboveRange, 1.0 / theta)
    } else if theta <= lower {
        (BoundCase::BelowRange, theta)
    } else {
        let lhs = oracle
            .nontrivial()
            .iter()
            .map(|&i| {
                let s = oracle.sigmas[i];
                (s * s - theta * theta).abs() / ((1.0 + s * s) * theta)
            })
            .fold(f64::INFINITY, f64::min);
        (BoundCase::Interior, lhs)
    };
    BoundReport { case, lhs, rhs }
}

/// Indices of the `ell` nontrivial `σ` closest to `tau`, nearest first,
/// ties going to the smaller `σ`. Distances within `1e-12·τ` of each
/// other are ties.
pub fn closest_to_target(oracle: &FullGsvd, tau: f64, ell: usize) -> Vec<usize> {
    let mut idx = oracle.nontrivial();
    idx.sort_by(|&i, &j| {
        let (si, sj) = (oracle.sigmas[i], oracle.sigmas[j]);
        distance_key(si, tau)
            .partial_cmp(&distance_key(sj, tau))
            .unwrap_or(Ordering::Equal)
            .then(si.partial_cmp(&sj).unwrap_or(Ordering::Equal))
    });
    idx.truncate(ell);
    idx
}
