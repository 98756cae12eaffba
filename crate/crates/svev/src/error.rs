//! Error types shared across the crate.

/// Errors produced by the library.
#[derive(thiserror::Error, Debug, Clone)]
pub enum Error {
    /// A parameter is outside the admissible range of a family or operation.
    #[error("configuration error: {0}")]
    Config(String),
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical procedure failed to converge or detected an unusable integrand.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// The operation is not supported at the requested size or smoothness.
    #[error("capability error: {0}")]
    Capability(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    /// Exit code used by the CLI: 2 config, 3 numeric/domain/capability.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Domain(_) => 2,
            Error::Numeric(_) | Error::Capability(_) => 3,
        }
    }
}
