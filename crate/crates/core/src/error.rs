//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A latitude pair violates 0 ≤ θ1 ≤ θ2 ≤ π.
    #[error("invalid belt region: {0}")]
    InvalidRegion(String),

    /// An input qubit's angles are out of range.
    #[error("invalid input state: {0}")]
    InvalidInput(String),

    /// A gate failed the normalization/orthogonality checks.
    #[error("invalid gate: {0}")]
    InvalidGate(String),

    /// Array or index shapes don't line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A state expected to be normalized is not.
    #[error("state not normalized: |amplitudes|^2 = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    /// A parameter is outside the supported range.
    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    /// A file or stream could not be parsed.
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
