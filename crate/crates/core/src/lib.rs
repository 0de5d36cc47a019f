//! Exact computer algebra for a family of 9×9 braid matrices: spectral
//! Yang–Baxter checks, RTT relation ideals for the eight constant
//! solutions, their bialgebra structure and a truncated dual.

pub mod algebra;
pub mod bialgebra;
pub mod braid;
pub mod dual;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod report;
pub mod rtt;
pub mod scalar;

pub use error::{Error, Result};
