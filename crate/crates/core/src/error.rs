//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// One-line data that does not describe a permutation of 1..=n.
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    /// Two permutations of different degrees fed to a binary operation.
    #[error("degree mismatch: left acts on {left} points, right on {right}")]
    DegreeMismatch { left: usize, right: usize },

    /// A request past a hard enumeration budget.
    #[error("degree {degree} exceeds the limit {limit} for {operation}; use the matrix backend for larger ranks")]
    CapacityExceeded {
        operation: &'static str,
        degree: usize,
        limit: usize,
    },

    /// A block composition with a zero part, or no parts at all.
    #[error("invalid block composition: {0}")]
    InvalidBlocks(String),

    /// Block data whose totals disagree where they must agree.
    #[error("block totals disagree: {0}")]
    TotalMismatch(String),

    /// A matrix whose margins do not match the expected ones.
    #[error("margin mismatch: {0}")]
    MarginMismatch(String),

    /// Matrix entry data that is ragged or empty.
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    /// A permutation handed to the matrix correspondence that is not a
    /// minimal double-coset representative of the given system.
    #[error("permutation {0} is not a minimal coset representative for the given system")]
    NotMinimalRepresentative(String),

    /// A comparison predicate that fails the partial-order axioms.
    #[error("relation is not a partial order: {witness}")]
    NotPartialOrder { witness: String },

    /// A poset operation that requires a global minimum and maximum.
    #[error("poset has no unique minimum/maximum: {0}")]
    Unbounded(String),

    /// Cover data that is cyclic or not transitively reduced.
    #[error("invalid cover data: {0}")]
    InvalidCovers(String),

    /// Parameters that violate the defining constraints of a case row.
    #[error("invalid case parameters: {0}")]
    InvalidCase(String),

    /// The two backends produced different posets for the same case.
    /// This is a hard tripwire; it must never fire.
    #[error("backend disagreement on case {case}: {detail}")]
    BackendMismatch { case: String, detail: String },

    /// Two cases with the same catalog label fell into different classes,
    /// or two labels collided on one class.
    #[error("label partition violated: {0}")]
    LabelConflict(String),

    /// A swept instance whose poset is not isomorphic to any of the
    /// catalogued classes.
    #[error("instance {case} does not match any catalogued class")]
    UnknownClass { case: String },

    /// No (or several) factorizations found where theory promises exactly one.
    #[error("coset decomposition failed for {element}: found {found} factorizations")]
    DecompositionFailed { element: String, found: usize },
}
