use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input data violates a structural requirement (partite, flag, schema).
    #[error("validation error: {0}")]
    Validation(String),
    /// An exhaustive search would exceed its configured bound.
    #[error("resource limit reached: {what} (bound {bound})")]
    Resource { what: String, bound: u128 },
    /// Voltage data whose 2-cell boundaries do not compose to the identity.
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
