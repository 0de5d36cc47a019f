//! Free algebra on the nine generators up to degree 2, generator basis
//! changes and quadratic relation sets.

pub mod basis_change;
pub mod generator;
pub mod latex;
pub mod relations;

pub use basis_change::{generator_exchange, hat, hat_as_displayed, tilde, GeneratorBasisChange};
pub use generator::{monomial_index, monomial_of, BasisLabel, Generator};
pub use relations::{change_basis_deg2, relation_from_terms, QuadraticRelationSet};
