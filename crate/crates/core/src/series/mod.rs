//! Truncated skew power series ℬ₀[[t;T]], special terms and the projection P, the
//! Hadamard algebra of special series, pure-term factorization at lamplighter levels,
//! and weighted automata for rational series in the pure terms.

mod automaton;
mod pure;
mod skew;
mod special;

#[cfg(test)]
mod tests;

pub use automaton::{automaton_to_special, WeightedAutomaton};
pub use pure::{factor_pure, pure_terms, SpecialTerm};
pub use skew::TruncSkewSeries;
pub use special::{p_e, p_tinv_e, project_p, special_set_of, special_sets, unit_special_set, SpecialSeries};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::approx::ApproxError;
use crate::space::SpaceError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("coefficient of degree {0} is not supported away from E, T(E), ..., T^{{i-1}}(E)")]
    SupportViolation(usize),
    #[error("negative degree {0} in a power series")]
    NegativeDegree(i64),
    #[error("constant term is not invertible")]
    NotInvertibleConstantTerm,
    #[error("series of order {order} cannot be represented on components of length up to {needed}")]
    CutoffMismatch { order: usize, needed: usize },
    #[error("operands use different schemes, fields or orders")]
    SchemeMismatch,
    #[error("not a special term: {0}")]
    NotSpecial(String),
    #[error("pure factorization needs a lamplighter level n >= 1")]
    LevelZeroUnsupported,
    #[error("star needs a series with zero constant coefficient")]
    NotProper,
    #[error("degree {degree} exceeds the largest available degree {max}")]
    DegreeOverflow { degree: usize, max: usize },
    #[error("automaton shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Approx(#[from] ApproxError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}
