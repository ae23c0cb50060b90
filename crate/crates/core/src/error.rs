use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// The input is not well-formed JSON (or TOML).
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A feature of a FeatureCollection could not be interpreted.
    #[error("feature {index}: {message}")]
    Feature { index: usize, message: String },

    #[error("unknown layer value in features: {}", ids.join(", "))]
    UnknownLayer { ids: Vec<String> },

    #[error("open ring in features: {}", ids.join(", "))]
    OpenRing { ids: Vec<String> },

    #[error("invalid geometry in feature {id}: {message}")]
    InvalidGeometry { id: String, message: String },

    /// A JSON-Lines record could not be read.
    #[error("line {line}: {message}")]
    Record { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0}")]
    Validation(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn json(err: &serde_json::Error) -> Self {
        Error::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }

    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}
