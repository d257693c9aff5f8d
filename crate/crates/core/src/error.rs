//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by simulation, transform, and measurement operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the operation's domain (negative path
    /// difference, empty reflector list, out-of-range slice index, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration violated one of its construction invariants. The
    /// message names the violated constraint.
    #[error("invalid spec: {0}")]
    Spec(String),

    /// The input is degenerate for the requested operation (all-zero volume,
    /// constant slice under automatic thresholding).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A file or text payload did not match its expected format.
    #[error("format error: {0}")]
    Format(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// True for finite, strictly positive values; false for NaN.
pub(crate) fn positive(v: f64) -> bool {
    v.is_finite() && v > 0.0
}

/// True for finite, nonnegative values; false for NaN.
pub(crate) fn non_negative(v: f64) -> bool {
    v.is_finite() && v >= 0.0
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        Error::Spec(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }

    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
}
