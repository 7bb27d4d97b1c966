//! Discrete-variable operator IR: domains, local factors, polynomials of
//! product terms, Boolean composition and JSON exchange.

mod domain;
mod factor;
mod json;
mod logic;
mod poly;

pub use domain::{sub_assignments, DomainSpec, Variable};
pub use factor::{LocalOp, Primitive};
pub use json::{FactorJson, OperatorPolyJson, TermJson};
pub use logic::*;
pub use poly::{OperatorPoly, ProductTerm};
