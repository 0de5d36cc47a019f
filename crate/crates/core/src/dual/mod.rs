//! Graded quotient of the (−,+,−) bialgebra, its truncated dual and the
//! checks of the dual relations and coproducts.

pub mod basis;
pub mod expr;
pub mod functional;
pub mod quotient;
pub mod suite;

pub use basis::{compare_basis_display, BasisDisplayReport};
pub use expr::{expand_statement, parse_dual_expr, DualIdentity, Evaluator};
pub use functional::{DualContext, DualFunctional, PrimitivityWitness};
pub use quotient::{
    hat_quotient, parse_word, word_text, CoproductCache, GradedQuotient, Word, MAX_TRUNCATION,
};
pub use suite::{
    check_identity, check_identity_str, minus_plus_context, run_dual_suite, DualSuiteReport,
    IdentityRecord, PrimitivityRecord, DEFAULT_TRUNCATION,
};
