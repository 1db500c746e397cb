//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by the library.
///
/// The CLI maps these onto its exit-code contract: configuration and
/// validation problems, precision exhaustion, hypothesis failures, and
/// effort-cap hits are distinguishable by variant.
#[derive(Debug, Error)]
pub enum Error {
    /// Bad input: malformed spec, empty prime set, window too small, …
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A certified decision could not be reached at the configured
    /// maximum working precision.
    #[error("undecided at maximum precision {max_bits} bits: {what}")]
    Precision { what: String, max_bits: u32 },

    /// A theorem hypothesis required by the requested operation fails for
    /// the given inputs (e.g. dominant root is a rational integer).
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    /// A configured effort cap was exceeded (factoring, scan size).
    #[error("effort cap exceeded: {0}")]
    Effort(String),

    /// Numerical linear algebra failed (pivot enclosure contains zero).
    #[error("ill-conditioned system: {0}")]
    IllConditioned(String),

    /// Internal consistency violation that indicates a bug, not bad input.
    /// Raised loudly instead of returning wrong data.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    pub fn effort(msg: impl Into<String>) -> Self {
        Error::Effort(msg.into())
    }
}
