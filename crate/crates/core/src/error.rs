use std::path::PathBuf;

/// Errors produced by the corpus toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: duplicate id {id:?}")]
    DuplicateId { line: usize, id: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("no training sites found")]
    NoTrainingSites,

    #[error("no evaluation sites found")]
    NoEvaluationSites,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("no embedding stored for text {0:?}")]
    MissingEmbedding(String),

    #[error("transport error: {0}")]
    Transport(String),

    #[error("unknown source {0:?}")]
    UnknownSource(String),

    #[error("no words found")]
    NoWords,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures of an embedding backend (network, timeouts, bad replies).
    pub fn is_transport(&self) -> bool {
        matches!(self, Error::Transport(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
