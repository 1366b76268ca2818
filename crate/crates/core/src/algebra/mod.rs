//! The crossed product C_K(X) ⋊_T ℤ, the lamplighter group algebra, the Fourier
//! isomorphism between them, and the quotient at a periodic orbit.

mod crossed;
mod fourier;
mod function;
mod lamp;
mod parser;
mod quotient;

pub use crossed::{CrossedElement, CrossedMatrix};
pub use fourier::{fourier, inverse_fourier};
pub use function::LocallyConstantFn;
pub use lamp::{GroupAlgebraElement, LampGroupElement};
pub use parser::{parse_expression, parse_expression_with, parse_matrix, ParseOptions};
pub use quotient::{quotient_at_orbit, LaurentMatrix, LaurentPoly};

use thiserror::Error;

use crate::field::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("field context mismatch")]
    ContextMismatch,
    #[error("elements live on different spaces")]
    SpaceMismatch,
    #[error("operation not available for this geometry")]
    GeometryMismatch,
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("1/2 does not exist in characteristic {0}")]
    CharacteristicError(u64),
    #[error("{0} has no inverse in the group algebra")]
    NotInvertible(String),
    #[error("bad matrix shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Parses an expression (or `[[..],[..]]` matrix) and transports it to the crossed product.
pub fn parse_crossed_matrix(
    text: &str,
    field: &crate::field::Field,
    opts: ParseOptions,
) -> Result<CrossedMatrix, AlgebraError> {
    let rows = parse_matrix(text, field, opts)?;
    let n = rows.len();
    let mut entries = Vec::with_capacity(n * n);
    for row in &rows {
        for x in row {
            entries.push(fourier(x)?);
        }
    }
    CrossedMatrix::new(n, entries)
}
