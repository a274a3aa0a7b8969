use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid {name} = {value}: {reason}")]
    Invariant {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("sites {first} and {second} are {distance:e} m apart (coincident below {min:e} m)")]
    DegenerateGeometry {
        first: usize,
        second: usize,
        distance: f64,
        min: f64,
    },

    #[error("state is not normalized: sum of |ψ|² = {norm}")]
    NotNormalized { norm: f64 },

    #[error("analytic and numeric engines disagree by {difference:e} at theta = {theta}, t = {duration} s")]
    EngineMismatch {
        theta: f64,
        duration: f64,
        difference: f64,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn invariant(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Invariant {
            name,
            value,
            reason,
        }
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
