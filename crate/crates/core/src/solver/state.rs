use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::deflation::ConvergedSet;
use crate::dense::{householder_qr, upper_inverse, DenseGsvd, DenseMatrix, ThinQr};
use crate::error::{Error, Result};
use crate::sparse::MatrixPair;
use crate::vecops::{axpy, dot, norm2, scale};

/// Relative size below which an expansion vector is considered to lie in
/// the current subspace.
pub const STALL_TOL: f64 = 1e-13;

const RANDOM_TRIES: usize = 8;

/// Right search basis `X̃` with the thin QR factors `A·X̃ = Ũ·G` and
/// `B·X̃ = Ṽ·H`.
#[derive(Debug, Clone)]
pub struct SearchState {
    x: DenseMatrix,
    au: ThinQr,
    bv: ThinQr,
}

/// Side effects of growing the subspace by one vector.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExpandOutcome {
    /// The given vector was (numerically) in the subspace and a random one
    /// was used instead.
    pub fallback: bool,
    /// `A·x₊` was dependent on `Ũ`; `G` got a zero diagonal entry.
    pub degenerate_a: bool,
    /// Same for `B·x₊` and `H`.
    pub degenerate_b: bool,
}

impl SearchState {
    /// State with `k = 0`.
    pub fn empty(pair: &MatrixPair) -> Self {
        Self {
            x: DenseMatrix::zeros(pair.n(), 0),
            au: ThinQr::empty(pair.m()),
            bv: ThinQr::empty(pair.p()),
        }
    }

    /// One-dimensional state spanned by `x0`, made orthogonal to the
    /// converged `Y_c` first.
    pub fn initialize(
        pair: &MatrixPair,
        x0: &[f64],
        conv: &ConvergedSet,
        rng: &mut ChaCha8Rng,
    ) -> Result<(Self, ExpandOutcome)> {
        if x0.len() != pair.n() {
            return Err(Error::DimensionMismatch {
                expected: pair.n(),
                found: x0.len(),
            });
        }
        let mut state = Self::empty(pair);
        let out = state.expand(pair, x0, conv, rng)?;
        let x = state.x.col(0);
        let ax = norm2(&pair.a().spmv(x)?);
        let bx = norm2(&pair.b().spmv(x)?);
        if ax == 0.0 && bx == 0.0 {
            return Err(Error::RegularityViolation);
        }
        Ok((state, out))
    }

    /// Current dimension `k`.
    pub fn k(&self) -> usize {
        self.x.cols()
    }

    pub fn x_basis(&self) -> &DenseMatrix {
        &self.x
    }

    pub fn u_basis(&self) -> &DenseMatrix {
        &self.au.q
    }

    pub fn v_basis(&self) -> &DenseMatrix {
        &self.bv.q
    }

    pub fn g(&self) -> &DenseMatrix {
        &self.au.r
    }

    pub fn h(&self) -> &DenseMatrix {
        &self.bv.r
    }

    /// Adds `(I − X̃X̃ᵀ)t`, normalized and kept orthogonal to `Y_c`, and
    /// extends both QR factors. If that vector vanishes relative to `t`, a
    /// seeded random direction is used instead.
    pub fn expand(
        &mut self,
        pair: &MatrixPair,
        t: &[f64],
        conv: &ConvergedSet,
        rng: &mut ChaCha8Rng,
    ) -> Result<ExpandOutcome> {
        let mut out = ExpandOutcome::default();
        let mut w = t.to_vec();
        let t_norm = norm2(t);
        let gamma = self.orthogonalize(&mut w, conv);
        if !(t_norm > 0.0) || !(gamma > STALL_TOL * t_norm) {
            out.fallback = true;
            w = self.random_direction(conv, rng)?;
        } else {
            scale(1.0 / gamma, &mut w);
        }
        let ax = pair.a().spmv(&w)?;
        let bx = pair.b().spmv(&w)?;
        out.degenerate_a = self.au.push_column_or_complete(&ax)?;
        out.degenerate_b = self.bv.push_column_or_complete(&bx)?;
        self.x.push_col(&w);
        Ok(out)
    }

    /// Keeps the projected components listed in `keep`: with `D_keep = Q·R`,
    /// `X̃ ← X̃·Q`, `Ũ ← Ũ·E_keep`, `Ṽ ← Ṽ·F_keep`, `G ← Σ_G·R⁻¹`,
    /// `H ← Σ_H·R⁻¹`.
    ///
    /// Used both for thick restart (the `k_min` components nearest the
    /// target) and for purging a converged one (all the others).
    pub fn compress(&mut self, gsvd: &DenseGsvd, keep: &[usize]) {
        if keep.is_empty() {
            self.x = DenseMatrix::zeros(self.x.rows(), 0);
            self.au = ThinQr::empty(self.au.rows());
            self.bv = ThinQr::empty(self.bv.rows());
            return;
        }
        let qr = householder_qr(&gsvd.d.select_cols(keep));
        let r_inv = upper_inverse(&qr.r);
        let sg: Vec<f64> = keep.iter().map(|&i| gsvd.sigma_g[i]).collect();
        let sh: Vec<f64> = keep.iter().map(|&i| gsvd.sigma_h[i]).collect();
        self.x = self.x.matmul(&qr.q);
        self.au = ThinQr {
            q: self.au.q.matmul(&gsvd.e.select_cols(keep)),
            r: upper_part(&r_inv.scale_rows(&sg)),
        };
        self.bv = ThinQr {
            q: self.bv.q.matmul(&gsvd.f.select_cols(keep)),
            r: upper_part(&r_inv.scale_rows(&sh)),
        };
    }

    /// Largest column error of `A·X̃ = Ũ·G` and `B·X̃ = Ṽ·H`, recomputed
    /// from the sparse matrices.
    pub fn factorization_error(&self, pair: &MatrixPair) -> f64 {
        let mut err = 0.0_f64;
        for j in 0..self.k() {
            let x = self.x.col(j);
            let mut ax = pair.a().spmv(x).expect("shape checked");
            let mut bx = pair.b().spmv(x).expect("shape checked");
            for i in 0..=j {
                axpy(-self.au.r[(i, j)], self.au.q.col(i), &mut ax);
                axpy(-self.bv.r[(i, j)], self.bv.q.col(i), &mut bx);
            }
            err = err.max(norm2(&ax)).max(norm2(&bx));
        }
        err
    }

    /// Largest loss of orthonormality among `X̃`, `Ũ`, `Ṽ`.
    pub fn orthonormality_error(&self) -> f64 {
        self.x
            .orthonormality_error()
            .max(self.au.q.orthonormality_error())
            .max(self.bv.q.orthonormality_error())
    }

    // Two passes of Gram-Schmidt against X̃ and an orthonormal basis of Y_c.
    // X̃ ⊥ Y_c, so the two sets can be treated as one orthonormal block.
    fn orthogonalize(&self, w: &mut [f64], conv: &ConvergedSet) -> f64 {
        for _ in 0..2 {
            for basis in [&self.x, conv.y_orth()] {
                for c in basis.columns() {
                    let h = dot(c, w);
                    axpy(-h, c, w);
                }
            }
        }
        norm2(w)
    }

    fn random_direction(&self, conv: &ConvergedSet, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
        let n = self.x.rows();
        for _ in 0..RANDOM_TRIES {
            let mut w: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let before = norm2(&w);
            let gamma = self.orthogonalize(&mut w, conv);
            if gamma > 1e-8 * before {
                scale(1.0 / gamma, &mut w);
                return Ok(w);
            }
        }
        Err(Error::SubspaceExhausted("no direction left outside the search and deflation spaces"))
    }
}

// R⁻¹ is upper triangular up to rounding; drop the strictly lower part.
fn upper_part(m: &DenseMatrix) -> DenseMatrix {
    let mut out = m.clone();
    for j in 0..m.cols() {
        for i in j + 1..m.rows() {
            out[(i, j)] = 0.0;
        }
    }
    out
}
