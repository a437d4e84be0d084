//! Error type shared by every module.

use thiserror::Error;

/// Failures reported by constructions, verifiers and parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A descriptor (modulus, gamma chain, structure table) is malformed.
    #[error("descriptor error: {0}")]
    Descriptor(String),
    /// Two operands live over different structures.
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    /// An input violates a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A linear system or lifting problem has no solution.
    #[error("no solution: {0}")]
    NoSolution(String),
    /// A bounded witness search gave up.
    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),
    /// The requested operation is not available for this structure.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An identity that must hold exactly failed.
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    /// Input text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
