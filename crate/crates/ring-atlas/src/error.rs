//! Error taxonomy shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes for construction and analysis entry points.
///
/// Pure lookups (table reads, profile queries) never fail; anything that
/// takes user-controlled parameters returns `Result` with one of these.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A parameter is outside the documented domain (non-prime modulus,
    /// zero degree, a non-field coefficient ring, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested object would exceed the configured order cap.
    #[error("order {requested} exceeds the configured cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },

    /// A documented precondition does not hold for the given arguments
    /// (e.g. quotient by a set that is not a two-sided ideal).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal consistency check failed; indicates a bug in this crate.
    #[error("internal error: {0}")]
    Internal(String),
}
