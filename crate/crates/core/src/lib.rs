//! Partial generalized singular value decomposition of large sparse matrix
//! pairs by a cross-product-free Jacobi–Davidson method.
//!
//! Given a regular pair `(A, B)` with `A` of size `m×n` and `B` of size
//! `p×n`, [`solver::run`] computes the `ℓ` GSVD components
//! `(α, β, u, v, x)` whose generalized singular values `σ = α/β` are closest
//! to a target `τ`. The products `AᵀA` and `BᵀB` are never formed: the
//! right search subspace is expanded by approximately solving a projected
//! correction equation with MINRES, and the left subspaces are maintained
//! as thin QR factors of `AX̃` and `BX̃`.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command-line driver live in the companion `jdgsvd` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
mod num;

pub mod dense;
pub mod generators;
pub mod minres;
pub mod mtx;
pub mod oracle;
pub mod solver;
pub mod sparse;
pub mod vecops;

pub use dense::{DenseGsvd, DenseMatrix, ThinQr};
pub use error::{Error, Result};
pub use solver::{run, ConvergedSet, RunStats, SolverConfig};
pub use sparse::{MatrixPair, SparseMatrix};
