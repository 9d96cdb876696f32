use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::num::sqrt;

/// Start vector for the right search subspace.
#[derive(Debug, Clone, PartialEq)]
pub enum StartVector {
    /// `(1, …, 1)ᵀ/√n`
    Ones,
    /// `i mod 4` for `i = 1..n`, normalized; for `B` with a constant null vector.
    Mod4,
    /// Any nonzero vector of length `n`; normalized on use.
    Custom(Vec<f64>),
}

impl StartVector {
    /// The unit start vector of length `n`.
    pub fn build(&self, n: usize) -> Result<Vec<f64>> {
        let mut x: Vec<f64> = match self {
            StartVector::Ones => alloc::vec![1.0; n],
            StartVector::Mod4 => (1..=n).map(|i| (i % 4) as f64).collect(),
            StartVector::Custom(v) => {
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: v.len(),
                    });
                }
                v.clone()
            }
        };
        let nrm = sqrt(x.iter().map(|v| v * v).sum());
        if !(nrm > 0.0) || !nrm.is_finite() {
            return Err(Error::InvalidInput("start vector must be nonzero and finite"));
        }
        x.iter_mut().for_each(|v| *v /= nrm);
        Ok(x)
    }
}

/// Parameters of a solve. [`SolverConfig::new`] fills in the defaults:
/// `tol = 1e-10`, `k_min = 3`, `k_max = 30`, `fixtol = 1e-4`,
/// `eps_tilde = 1e-3`, all-ones start vector, 500 outer iterations per
/// component.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Target `τ > 0`.
    pub tau: f64,
    /// Number of wanted components `ℓ`.
    pub ell: usize,
    /// Outer stopping tolerance.
    pub tol: f64,
    pub k_min: usize,
    pub k_max: usize,
    /// Residual level at which the fixed-target correction equation is
    /// swapped for the one shifted by the current `θ²`. `0` never swaps,
    /// `+∞` always uses `θ²`.
    pub fixtol: f64,
    /// Requested accuracy of the expansion vector.
    pub eps_tilde: f64,
    pub x0: StartVector,
    /// Outer iterations allowed per component.
    pub max_outer: usize,
    /// MINRES iteration cap; `None` means `min(2n, 10 000)`.
    pub inner_max_iters: Option<usize>,
    /// When set, every correction equation is solved to this relative
    /// residual instead of the adaptive tolerance.
    pub inner_tol_override: Option<f64>,
    /// Seed for random fallback expansion vectors.
    pub seed: u64,
}

impl SolverConfig {
    pub fn new(tau: f64, ell: usize) -> Self {
        Self {
            tau,
            ell,
            tol: 1e-10,
            k_min: 3,
            k_max: 30,
            fixtol: 1e-4,
            eps_tilde: 1e-3,
            x0: StartVector::Ones,
            max_outer: 500,
            inner_max_iters: None,
            inner_tol_override: None,
            seed: 0,
        }
    }

    /// Checks the parameter invariants against the problem size `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        if !(self.tau > 0.0) || !self.tau.is_finite() {
            return Err(Error::InvalidConfig("tau must be finite and positive"));
        }
        if self.ell == 0 {
            return Err(Error::InvalidConfig("ell must be at least 1"));
        }
        if self.ell > n {
            return Err(Error::InvalidConfig("ell cannot exceed n"));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::InvalidConfig("tol must be finite and positive"));
        }
        // fixtol = 0 is the "never switch" setting and is exempt from tol <= fixtol
        if self.fixtol.is_nan() || self.fixtol < 0.0 || (self.fixtol > 0.0 && self.fixtol < self.tol) {
            return Err(Error::InvalidConfig("fixtol must be 0 or at least tol"));
        }
        if self.k_min < 1 || self.k_min >= self.k_max {
            return Err(Error::InvalidConfig("need 1 <= k_min < k_max"));
        }
        if !(self.eps_tilde > 0.0) || !self.eps_tilde.is_finite() {
            return Err(Error::InvalidConfig("eps_tilde must be finite and positive"));
        }
        if self.max_outer == 0 {
            return Err(Error::InvalidConfig("max_outer must be at least 1"));
        }
        if self.inner_max_iters == Some(0) {
            return Err(Error::InvalidConfig("inner_max_iters must be at least 1"));
        }
        if let Some(t) = self.inner_tol_override {
            if !(t > 0.0) {
                return Err(Error::InvalidConfig("inner tolerance override must be positive"));
            }
        }
        Ok(())
    }
}
