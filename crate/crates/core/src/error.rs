use thiserror::Error;

/// Errors raised by the algebra kernels and the geometric pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands live in different rings or series spaces.
    #[error("descriptor mismatch: {0}")]
    Descriptor(String),

    /// Attempted to invert something that has no inverse.
    #[error("not invertible: {0}")]
    NonInvertible(String),

    /// A precondition on the input values was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// The numeric torus parameters are not generic enough.
    #[error("degenerate torus parameters: {0}")]
    DegenerateParameters(String),

    /// An internal identity that must hold exactly did not hold.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    /// A configuration value is out of range.
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
