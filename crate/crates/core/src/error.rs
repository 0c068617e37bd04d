use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An element, word or generating set does not belong to the group it was used with.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid group descriptor: {0}")]
    InvalidGroup(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("generating set is empty after removing the identity")]
    EmptyGenSet,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The search ran out of its memory budget; `radius` is the last fully explored radius.
    #[error("memory budget of {limit} bytes exceeded after radius {radius}")]
    MemoryBudget { limit: usize, radius: usize },

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("element {0} is not torsion")]
    NotTorsion(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// True for errors caused by running out of a resource budget.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::MemoryBudget { .. } | Error::CapExceeded(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
