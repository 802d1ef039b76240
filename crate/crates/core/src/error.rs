//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by algebra construction, representation building and
/// verification routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum ClextError {
    /// Input values violate a precondition (non-finite entries, bad ranges,
    /// dimension not a multiple of lambda, ...).
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// A structure-function value that must stay nonnegative went negative.
    #[error("unitarity violation: {0}")]
    UnitarityViolation(String),

    /// The truncation dimension is too small for the requested check.
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),

    /// The requested construction does not exist for these parameters
    /// (e.g. a special-case pattern that the parameters do not match).
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// No unitary irreducible representation exists at the requested
    /// lowest weight.
    #[error("no unirrep at the requested lowest weight")]
    NoUnirrep,

    /// A deformation family that is ruled out by the constancy requirement
    /// on the Casimir coefficients.
    #[error("rejected family: {0}")]
    RejectedFamily(String),
}

pub type Result<T> = std::result::Result<T, ClextError>;
