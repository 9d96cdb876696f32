//! Command-line driver for `jdgsvd-core`: Matrix Market input, solver
//! configuration from flags, and versioned text reports.

pub mod cli;
pub mod report;

pub use cli::{execute, run_solve, Args, Outcome};
pub use report::Report;
