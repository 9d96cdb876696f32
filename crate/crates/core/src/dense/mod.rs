//! Small dense kernels: thin QR with column appends, one-sided Jacobi SVD,
//! and the GSVD of the projected pair `(G, H)`.

mod gsvd;
mod matrix;
mod qr;
mod svd;

pub use gsvd::{dense_gsvd, DenseGsvd, STACK_RANK_TOL, TRIVIAL_CS_TOL};
pub(crate) use gsvd::cs_gsvd;
pub use matrix::DenseMatrix;
pub use qr::{
    householder_qr, orthonormal_basis, solve_upper, solve_upper_mat, upper_inverse, RankDeficiency,
    ThinQr, RANK_TOL,
};
pub use svd::{jacobi_svd, Svd};
