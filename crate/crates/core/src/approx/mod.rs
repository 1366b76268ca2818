//! Partition schemes (E, 𝒫), the quasi-partition into components W, and the block
//! representation of the crossed product in ∏_W M_{|W|}(K).

mod enumerate;
mod macci;
mod refine;
mod represent;
mod scheme;

pub use enumerate::{
    enumerate_components, enumerate_components_bounded, enumerate_generic, tail_mass_closed_form, ComponentSet,
    WComponent, DEFAULT_COMPONENT_BUDGET,
};
pub use macci::{macci, macci_sequence};
pub use refine::refine_embedding;
pub use represent::{
    approximant, approximant_matrix, component_unit, matrix_unit, matrix_unit_from_generators, represent,
    represent_matrix, BlockElement,
};
pub use scheme::{BlockConvention, PartitionScheme, Provenance};

pub(crate) use represent::{block_for, value_on_translate};

#[cfg(test)]
mod tests;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::space::SpaceError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("invalid partition scheme: {0}")]
    InvalidScheme(String),
    #[error("cutoff must be at least 1")]
    InvalidCutoff,
    #[error("about {estimate} components exceed the budget of {budget}")]
    CutoffTooLargeForMemory { estimate: String, budget: usize },
    #[error("matrix unit index out of range")]
    IndexOutOfRange,
    #[error("not representable at this level (component {component}, degree {degree}): {reason}")]
    NotRepresentableAtLevel {
        component: usize,
        degree: i64,
        reason: String,
    },
    #[error("schemes are not nested")]
    SchemesNotNested,
    #[error("a segment of length {length} is beyond the coarse cutoff")]
    SegmentNotFound { length: usize },
    #[error("element and scheme live on different spaces")]
    SpaceMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
