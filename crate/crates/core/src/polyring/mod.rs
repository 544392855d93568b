//! Exact multivariate polynomials over the rationals.

mod monomial;
mod parse;
mod poly;
mod vars;

pub use monomial::{Monomial, MonomialOrdering};
pub use parse::parse_polynomial;
pub(crate) use poly::merge_terms;
pub use poly::{Coeff, Polynomial};
pub use vars::{Role, Variable, VariableSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown variable `{name}` at column {column}")]
    UnknownVariableAt { name: String, column: usize },
    #[error("exponent at column {column} must be a non-negative integer literal")]
    BadExponent { column: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("`{0}` is not a valid variable name")]
    InvalidVariableName(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("operands live over different variable sets")]
    VariableSetMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

impl PolyError {
    /// Column of a parse error, when the error carries one.
    pub fn column(&self) -> Option<usize> {
        match self {
            PolyError::Syntax { column, .. }
            | PolyError::UnknownVariableAt { column, .. }
            | PolyError::BadExponent { column } => Some(*column),
            _ => None,
        }
    }
}
