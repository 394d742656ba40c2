//! Error type shared by every module of the crate.

use crate::ordset::{DistributivityFailure, LocalCompletenessFailure};

/// Errors raised by constructors and by operations whose preconditions are
/// violated. Predicate *failures* are not errors: they are negative
/// [`Verdict`](crate::verdict::Verdict)s carrying a witness.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("element index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("expected a sequence of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("element {element} is not below the bound {bound}")]
    NotBelowBound { element: usize, bound: usize },

    #[error("carrier mismatch: the morphisms do not share the required (co)domain")]
    CarrierMismatch,

    #[error("relation is not reflexive at {i}")]
    NotReflexive { i: usize },

    #[error("relation is not transitive: {i} <= {j} <= {k} but not {i} <= {k}")]
    NotTransitive { i: usize, j: usize, k: usize },

    #[error("valuation is not monotone: {i} <= {j} but value({i}) !<= value({j})")]
    NonMonotoneValuation { i: usize, j: usize },

    #[error("map is not monotone: {i} <= {j} but map({i}) !<= map({j})")]
    NonMonotoneMap { i: usize, j: usize },

    #[error("lax inequality fails at element {element}: source value !<= target value of image")]
    NotLax { element: usize },

    #[error("the ambient ordered set is not locally complete: {0}")]
    NotLocallyComplete(LocalCompletenessFailure),

    #[error("the ambient ordered set is not locally cartesian closed: {0}")]
    NotLocallyCartesianClosed(DistributivityFailure),

    #[error(
        "a required meet below bound {bound} of {x} and {y} does not exist (ambient not locally complete)"
    )]
    MissingLocalMeet { bound: usize, x: usize, y: usize },

    #[error("a required join below bound {bound} does not exist (ambient not locally complete)")]
    MissingLocalJoin { bound: usize, elements: Vec<usize> },

    #[error("enumeration would visit {candidates} candidates, above the cap of {cap}")]
    EnumerationCapExceeded { candidates: u128, cap: u128 },

    #[error("{structure} is not antisymmetric: elements {i} and {j} are distinct but isomorphic")]
    NotAPoset { structure: &'static str, i: usize, j: usize },

    #[error("invalid descent-data family: sigma({index}) !<= alpha({index})")]
    InvalidDescentFamily { index: usize },

    #[error(
        "the mixed-category embedding is not effective for descent \
         (carrier level failed: {carrier}, family level failed: {family})"
    )]
    MixedEmbeddingNotEffective { carrier: bool, family: bool },

    #[error("descent-data compatibility fails between indices {i} and {j} over target {k}")]
    IncompatibleDescentFamily { i: usize, j: usize, k: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
