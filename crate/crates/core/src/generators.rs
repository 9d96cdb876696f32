//! Structured test operators and random sparse instances.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

/// `n×n` tridiagonal Toeplitz matrix with 3 on the diagonal and 1 off it.
pub fn gen_b0(n: usize) -> Result<SparseMatrix> {
    if n == 0 {
        return Err(Error::InvalidInput("B0 needs n >= 1"));
    }
    let mut t = Vec::with_capacity(3 * n);
    for i in 0..n {
        if i > 0 {
            t.push((i, i - 1, 1.0));
        }
        t.push((i, i, 3.0));
        if i + 1 < n {
            t.push((i, i + 1, 1.0));
        }
    }
    SparseMatrix::from_triplets(n, n, t)
}

/// `(n-1)×n` first-difference operator with rows `(…, 1, -1, …)`.
pub fn gen_b1(n: usize) -> Result<SparseMatrix> {
    if n < 2 {
        return Err(Error::InvalidInput("B1 needs n >= 2"));
    }
    let t = (0..n - 1).flat_map(|i| [(i, i, 1.0), (i, i + 1, -1.0)]);
    SparseMatrix::from_triplets(n - 1, n, t)
}

/// `n×(n+2)` second-difference operator with rows `(…, -1, 2, -1, …)`.
pub fn gen_b2(n: usize) -> Result<SparseMatrix> {
    if n == 0 {
        return Err(Error::InvalidInput("B2 needs n >= 1"));
    }
    let t = (0..n).flat_map(|i| [(i, i, -1.0), (i, i + 1, 2.0), (i, i + 2, -1.0)]);
    SparseMatrix::from_triplets(n, n + 2, t)
}

/// Random sparse matrix with roughly `density·rows·cols` entries uniform in
/// `[-1, 1)`, plus one guaranteed entry per column so no column is empty.
pub fn random_sparse(rows: usize, cols: usize, density: f64, seed: u64) -> Result<SparseMatrix> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidInput("random matrix needs positive dimensions"));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidInput("density must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Vec::new();
    for c in 0..cols {
        let r = rng.random_range(0..rows);
        t.push((r, c, rng.random_range(-1.0..1.0)));
    }
    for r in 0..rows {
        for c in 0..cols {
            if rng.random::<f64>() < density {
                t.push((r, c, rng.random_range(-1.0..1.0)));
            }
        }
    }
    SparseMatrix::from_triplets(rows, cols, t)
}
