//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by scenario validation, sampling, and the simulation
/// engine. Each variant maps to a stable machine-readable category used by
/// the CLI exit path.
#[derive(Debug, Error)]
pub enum Error {
    /// A physical dimension or count failed validation.
    #[error("invalid value for `{key}`: {message}")]
    Validation { key: String, message: String },

    /// The waiting area could not hold the requested number of
    /// non-overlapping standing circles within the retry budget.
    #[error("waiting-area capacity exhausted: placed {placed} of {requested} pedestrians after {attempts} attempts")]
    Capacity {
        placed: usize,
        requested: usize,
        attempts: usize,
    },

    /// Scenario file could not be parsed.
    #[error("scenario parse error in {path}: {message}")]
    ScenarioParse { path: String, message: String },

    /// The engine detected a broken internal invariant; the payload is a
    /// diagnostic dump of the offending configuration.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    /// An I/O failure, annotated with the path involved.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// A trace or summary file did not round-trip.
    #[error("malformed {kind} file: {message}")]
    Format { kind: &'static str, message: String },
}

impl Error {
    pub fn validation(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            key: key.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Stable category label for machine-readable CLI errors.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Validation { .. } => "validation",
            Error::Capacity { .. } => "capacity",
            Error::ScenarioParse { .. } => "scenario-parse",
            Error::Invariant(_) => "internal-invariant",
            Error::Io { .. } => "io",
            Error::Format { .. } => "format",
        }
    }
}
