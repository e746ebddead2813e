//! Error types shared across the crate.

use crate::table::AssocWitness;
use thiserror::Error;

/// Clause tag for construction-spec validation failures.
///
/// The tags mirror the two user-controllable blocks of a construction spec:
/// the group block on `Y` and the quasitrivial block on the complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    /// Clause (a): the designated subset must carry an abelian group whose
    /// exponent divides `arity - 1`.
    GroupBlock,
    /// Clause (b): the complement must carry an associative quasitrivial
    /// operation.
    TailBlock,
}

impl std::fmt::Display for Clause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Clause::GroupBlock => write!(f, "(a)"),
            Clause::TailBlock => write!(f, "(b)"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Malformed arguments: wrong lengths, out-of-range elements, size or
    /// arity mismatches.
    #[error("input error: {0}")]
    Input(String),

    /// Text-format errors, with the 1-based line the parser choked on.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The request exceeds the supported envelope (table size, search space).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An operation that must be associative is not; carries the first
    /// failing identity instance.
    #[error("operation is not associative: {0}")]
    NotAssociative(AssocWitness),

    /// A construction spec violates one of its structural clauses.
    #[error("construction clause {clause} violated: {msg}")]
    Construction { clause: Clause, msg: String },

    /// A structural guarantee that should hold unconditionally failed.
    /// Reserved for counterexamples to the theory the classifier relies on;
    /// reaching this is a bug in either the table under test or this crate.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub fn violation(msg: impl Into<String>) -> Self {
        Error::TheoremViolation(msg.into())
    }
}
