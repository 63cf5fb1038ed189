//! Exact rationals, sparse multivariate polynomials, monomial orders and the
//! polynomial text format.

mod monomial;
mod order;
mod parse;
mod polynomial;
mod rational;

use thiserror::Error;

pub use monomial::ExponentVector;
pub use order::MonomialOrder;
pub use parse::{parse_polynomial, ParseError, ParseErrorKind};
pub use polynomial::{default_var_names, Polynomial};
pub use rational::{
    denominator_lcm, format_rational, int, numerator_bits, parse_rational, rat, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("expected a point with {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
