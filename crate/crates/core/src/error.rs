use thiserror::Error;

/// Failure categories shared by every module.
///
/// The CLI maps these onto exit codes: precondition 2, budget 3, defect 4.
#[derive(Debug, Error)]
pub enum Error {
    /// The caller supplied input outside an operation's domain.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A configured search or size budget ran out before an answer was certain.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// An internal consistency check failed. These indicate a bug.
    #[error("internal defect: {0}")]
    Defect(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn defect(msg: impl Into<String>) -> Self {
        Error::Defect(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
