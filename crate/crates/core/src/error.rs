use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input violates a domain invariant (non-positive thickness, missing
    /// active layer, unresolved material name, ...).
    #[error("invalid {field}: {reason}")]
    Validation { field: String, reason: String },

    /// A file could not be parsed. `line` is 1-based when known.
    #[error("{}{}: {message}", path.display(), line.map(|l| format!(":{l}")).unwrap_or_default())]
    Parse {
        path: PathBuf,
        line: Option<usize>,
        message: String,
    },

    /// The inputs were well formed but the requested quantity cannot be
    /// computed from them (too few cycles, empty frequency bins, ...).
    #[error("{0}")]
    Computation(String),

    /// Sweep produced no design satisfying every constraint.
    #[error("no feasible design in the sweep ({total} points evaluated)")]
    EmptyFeasibleSet { total: usize },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 1,
            Error::Parse { .. } => 2,
            Error::Validation { .. } => 3,
            Error::Computation(_) => 4,
            Error::EmptyFeasibleSet { .. } => 5,
        }
    }
}
