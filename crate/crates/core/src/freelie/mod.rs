//! Free graded Lie algebras on ordered generators, truncated by weight.

mod basis;
mod element;
mod generators;
pub mod tensor;

pub use basis::{
    basis_in_degree, decompose, graded_witt_dimension, graded_witt_dimension_in, is_lyndon,
    lyndon_basis, necklace_dimension, right_normed, standard_factorization, BasisBracket,
    BracketKind,
};
pub use element::{format_terms, normalize_bracket, LieElement};
pub use generators::{Generator, GeneratorSet};
pub use tensor::Tensor;

/// A tensor word: generator indices in order.
pub type Word = smallvec::SmallVec<[u16; 8]>;
