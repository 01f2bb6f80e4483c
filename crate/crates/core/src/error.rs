use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A computation was refused because it would exceed a configured cap.
    #[error("scale limit exceeded: {what} ({value} > cap {cap})")]
    Scale { what: String, value: u128, cap: u128 },

    /// An argument violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input data (a table, a file) failed validation.
    #[error("validation failed: {0}")]
    Validation(String),

    /// The operation is not available for this kind of input.
    #[error("unsupported: {0}")]
    Capability(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn scale(what: impl Into<String>, value: u128, cap: u128) -> Self {
        Error::Scale { what: what.into(), value, cap }
    }
}

pub(crate) fn check_cap(what: &str, value: u128, cap: u128) -> Result<()> {
    if value > cap {
        Err(Error::scale(what, value, cap))
    } else {
        Ok(())
    }
}
