//! Error type shared by every module of the atlas.

use thiserror::Error;

/// Failure modes of the exact and floating-point solvers.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A required precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A configuration or parameter sits on a singular locus.
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// Internal consistency check failed (for example a refinement interval lost its sign change).
    #[error("inconsistency: {0}")]
    Inconsistency(String),
    /// A hardcoded transcription disagrees with its independent re-derivation.
    #[error("transcription check failed: {0}")]
    Transcription(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
