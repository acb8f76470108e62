//! Exact computations on the Berkovich projective line over a model
//! non-archimedean field.

pub mod affinoid;
pub mod berk;
pub mod cli;
pub mod dot;
pub mod error;
pub mod field;
pub mod magnitude;
pub mod parse;
pub mod tree;

pub use error::{Error, Result};
