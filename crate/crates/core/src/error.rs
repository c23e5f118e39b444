use thiserror::Error;

/// Errors raised by the group toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured size or time limit was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A textual specification could not be parsed.
    #[error("parse error in `{input}`: {message}")]
    Parse { input: String, message: String },
    /// A search that a proved statement guarantees to succeed came back empty.
    #[error("falsification event: {0}")]
    Falsified(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn parse(input: &str, msg: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            message: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
