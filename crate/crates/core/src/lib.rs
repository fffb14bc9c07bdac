//! Exact covariants, invariants, rational self-maps of moduli lines and the
//! planar constructions attached to genus-two curves.

pub mod algebra;
pub mod comitants;
pub mod invariants;
pub mod geometry;
pub mod moduli_maps;
pub mod quartic_comitants;
pub mod verify;

#[cfg(test)]
mod properties;

use thiserror::Error;

pub use algebra::{AlgebraError, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("variable name collision: {0}")]
    NameCollision(String),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("solution not unique: {0}")]
    NotUnique(String),
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
