use thiserror::Error;

/// Failure modes shared by every module.
///
/// `Domain` covers inputs outside an operation's precondition. `Resource`
/// is raised when an explicit guard (enumeration size, exhaustive scan space,
/// machine-word range) would be exceeded; it never signals a wrong input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource guard exceeded: {0}")]
    Resource(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn overflow() -> Self {
        Error::Resource("integer overflow in exact arithmetic".into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
