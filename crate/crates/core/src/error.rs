use thiserror::Error;

/// Errors raised by the library. Variants that signal a violated mathematical
/// precondition are distinguished from parse/IO failures by [`MextError::is_precondition`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MextError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element does not belong to the group: {0}")]
    InvalidElement(String),
    #[error("ill-defined homomorphism: {0}")]
    InvalidHom(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("element must have order exactly 2 (got order {0})")]
    NotOrderTwo(u64),
    #[error("size guard exceeded: {what} has size {size}, limit {limit} (raise MEXT_MAX_ORDER to override)")]
    SizeGuard {
        what: &'static str,
        size: u64,
        limit: u64,
    },
    #[error("invalid quadratic form: {0}")]
    InvalidForm(String),
    #[error("subgroup is not isotropic")]
    NotIsotropic,
    #[error("form is degenerate: {0}")]
    Degenerate(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("base categories differ")]
    BaseMismatch,
    #[error("order exceeds cap {0}")]
    CapExceeded(u64),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal arithmetic error: {0}")]
    Internal(String),
}

impl MextError {
    /// True for errors that report a violated mathematical precondition rather
    /// than malformed input text.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, MextError::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, MextError>;
