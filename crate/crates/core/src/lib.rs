//! Discrete-variable operator modelling for QAOA-style circuits.
//!
//! Problems are written as polynomials of single-variable factors over qudit
//! domains ([`dqir`]), lowered to qubit Pauli polynomials through a chosen
//! encoding ([`encoding`]), and compiled to circuits ([`circuit`]). Mixers
//! that never leave the valid subspace are synthesised in [`mixer`].

pub mod circuit;
pub mod cli;
pub mod dqir;
pub mod encoding;
mod error;
pub mod mixer;
pub mod pauli;
pub mod penalties;
pub mod problems;
pub mod report;
pub mod sim;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Terms smaller than this are dropped during simplification.
pub const PRUNE_TOL: f64 = 1e-12;
/// Tolerance for 0/1 checks and Hermiticity.
pub const BOOL_TOL: f64 = 1e-9;
/// Version stamped into every JSON document the crate writes.
pub const SCHEMA_VERSION: u32 = 1;

pub(crate) fn default_schema_version() -> u32 {
    SCHEMA_VERSION
}

/// Real number as a complex one.
pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
