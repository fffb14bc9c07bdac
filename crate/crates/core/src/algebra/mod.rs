//! Exact arithmetic: coefficient rings, sparse polynomials, dense matrices,
//! binary-form gcds and the polynomial text grammar.

pub mod matrix;
pub mod parse;
pub mod poly;
pub mod random;
pub mod ring;
pub mod univariate;

pub use matrix::{express_in_span, poly_det, primitive_vector, LinearSubstitution, Matrix};
pub use parse::{parse_poly, ParseError};
pub use poly::{monomials_of_degree, multinomial, Monomial, MultiPoly, Vars};
pub use ring::{
    denominator_lcm, is_prime, rat, rational_reconstruct, PrimeField, Rationals, Ring, LIFT_PRIME,
    Q,
};
pub use univariate::univariate_gcd;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("denominator of {value} vanishes modulo {p}")]
    DenominatorVanishes { p: u64, value: String },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("variable mismatch: [{0}] vs [{1}]")]
    VariableMismatch(String, String),
    #[error("duplicate variable {0}")]
    DuplicateVariable(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular matrix")]
    Singular,
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("gcd of two zero polynomials")]
    ZeroGcd,
    #[error("not univariate: {0}")]
    NotUnivariate(String),
}
