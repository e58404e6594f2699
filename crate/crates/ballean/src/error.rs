//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation that requires a nonempty set received an empty one.
    #[error("empty set")]
    EmptySet,
    /// A coordinate does not belong to the ground set.
    #[error("unknown point {0}")]
    UnknownPoint(String),
    /// Two values built over different ground sets were combined.
    #[error("ground mismatch")]
    GroundMismatch,
    /// A set that must be contained in another is not.
    #[error("not a subset")]
    NotSubset,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    /// No right end could be found for the named family member.
    #[error("no right end for {0}")]
    NoEnd(String),
    #[error("not a member: {0}")]
    NotMember(String),
    /// A value failed its construction invariants.
    #[error("invalid construction: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
