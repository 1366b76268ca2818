//! Sylvester rank brackets over the crossed product, kernel dimensions, the convergence
//! driver, and the nilpotency pattern check.

mod bracket;
mod nilpotent;


pub use bracket::{
    betti_bracket, brackets_by_cutoff, converge, kernel_bracket, sylvester_bracket, sylvester_bracket_on,
    ConvergeOptions, EngineConfig, RankBracket,
};
pub use nilpotent::{nilpotency_check, nilpotency_pattern_holds};

pub use crate::matrix::{matrix_rank, ExactMatrix};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::approx::ApproxError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error(transparent)]
    Approx(#[from] ApproxError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("budget exhausted at level {level}; best bracket [{}, {}]", best.lower, best.upper)]
    BudgetExceeded { best: Box<RankBracket>, level: usize },
    #[error("nilpotency pattern violated: {0}")]
    PatternViolated(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}
