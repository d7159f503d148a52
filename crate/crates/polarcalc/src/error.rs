use thiserror::Error;

/// Crate-wide error type. Variants map onto the CLI exit codes:
/// `MalformedInput` → 2, `Precondition` → 3, `ResourceLimit` → 4,
/// everything else → 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// Two independent evaluation routes disagreed. Always a bug.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::MalformedInput(_) => 2,
            Error::Precondition(_) => 3,
            Error::ResourceLimit(_) => 4,
            Error::Inconsistency(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
