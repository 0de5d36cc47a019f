//! Dense exact and float linear algebra.

pub mod echelon;
pub mod matrix;

pub use echelon::{
    quotient_projection, rref, rref_rows, rref_shuffled, subspace_equal, EchelonBuilder,
    QuotientMap, SparseVec, Subspace,
};
pub use matrix::{
    embed_site, embed_site13_alt, permutation_p, ExactMatrix, FloatMatrix, Matrix, Slot,
};
