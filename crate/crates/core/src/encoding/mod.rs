//! Qudit-to-qubit encodings: codewords, bitmasks and entrywise lowering.

mod assignment;
mod code;
mod lower;

pub use assignment::EncodingAssignment;
pub(crate) use code::ceil_log2;
pub use code::{CodeSpec, CodeTable, LocalCode};
pub use lower::{lower, outer_product_terms, restricted_deviation, restricted_equiv};
