//! Exact rational linear algebra and the mapping cone of a chain map pair.

mod graded;
mod pair;
mod random;
mod rational;

use thiserror::Error;

pub use graded::{cohomology_dims, sign, GradedComplex};
pub use pair::{
    alternating_sums, decompose_cohomology, induced_cohomology_map, mapping_cone,
    morse_equalities, morse_inequalities, ChainMapPair, CohomologyBasis, DecompositionEntry,
    EqualityReport, EqualityRow, InequalityReport, InequalityRow,
};
pub use random::{random_pair, RandomPairConfig};
pub use rational::{image_basis, kernel_basis, rank_q, rat, ratio, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("grading error: {0}")]
    Grading(String),
    #[error("nilpotency violation: d_{} ∘ d_{degree} has nonzero entry ({row}, {col})", degree + 1)]
    Nilpotency { degree: i32, row: usize, col: usize },
    #[error("invalid cone data: anticommutation fails at degree {degree}")]
    InvalidCone { degree: i32 },
    #[error("not a cocycle image: cone map of a degree {degree} cocycle is not closed")]
    NotACocycleImage { degree: i32 },
    #[error(
        "decomposition mismatch at degree {degree}: coker {coker} + ker {ker} != {betti}"
    )]
    DecompositionMismatch {
        degree: i32,
        coker: usize,
        ker: usize,
        betti: usize,
    },
}
