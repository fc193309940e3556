//! Numerical laboratory for graded Hilbert algebras at finite truncation.
//!
//! The crate models three concrete *-algebras with a compatible scalar
//! product (pointwise sequence multiplication, dense complex matrix
//! multiplication, and an algebra transported from a tight operator
//! family) together with the machinery that makes their infinite-model
//! behaviour testable on a desk: weighted seminorm ladders, growth
//! envelopes with decidable arithmetic, duality extensions of the
//! product and involution to tempered functionals, multiplier
//! (Moyal-type) membership verdicts, and the analysis/synthesis pair of
//! an operator frame.
//!
//! Everything is deterministic: random corpora are reproducible from a
//! recorded seed and all reductions run in a fixed index-ascending
//! order.

pub mod algebra;
pub mod cmatrix;
pub mod error;
pub mod graded;
pub mod moyal;
pub mod opfamily;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
