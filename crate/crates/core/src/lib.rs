//! Filtered 2-colimits and finite 2-limits of pseudofunctors valued in
//! finite categories, the canonical interchange functor between the two
//! composites, and constructive checks that it is an equivalence.

pub mod bicolim;
pub mod bilim;
pub mod error;
pub mod fincat;
pub mod generate;
pub mod interchange;
pub mod library;
pub mod pseudo;
pub mod setdiag;

pub use error::{Error, Result};
