use thiserror::Error;

use crate::setcore::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),

    #[error("the full set is missing from the closed family")]
    MissingTop,
    #[error("closed family is not closed under intersection: {0} and {1}")]
    NotIntersectionClosed(Subset, Subset),
    #[error("open family is not closed under union: {0} and {1}")]
    NotUnionClosed(Subset, Subset),
    #[error("closure table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("closure is not extensive at {0}")]
    NotExtensive(Subset),
    #[error("closure is not monotone: {0} is contained in {1} but its closure is not")]
    NotMonotone(Subset, Subset),
    #[error("closure is not idempotent at {0}")]
    NotIdempotent(Subset),

    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("space is not topological")]
    NotTopological,

    #[error("map does not fit its spaces: {0}")]
    SpaceMismatch(String),
    #[error("map is not regular at point {x} for minimal neighborhood {m}")]
    NotRegular { x: usize, m: Subset },
    #[error("equivalent criteria disagree: {0}")]
    InternalDisagreement(String),
}
