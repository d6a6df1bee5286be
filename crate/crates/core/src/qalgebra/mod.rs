//! Exact linear algebra over ℚ.

mod chain;
mod scalar;
pub mod sparse;

pub use chain::{chain_homology, ChainComplexSlice, HomologyDegree};
pub use scalar::{is_reduced, ParseScalarError, Scalar};
pub use sparse::{solve_linear, SparseMatrix, SparseVec, SpanBasis};
