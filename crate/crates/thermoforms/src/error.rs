use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid arguments or environment; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// A computation failed at a specific point; exit code 1.
    #[error("{what}: {source}")]
    Compute {
        what: String,
        #[source]
        source: thermoforms_core::Error,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            _ => 1,
        }
    }

    pub(crate) fn at(what: impl Into<String>) -> impl FnOnce(thermoforms_core::Error) -> Self {
        let what = what.into();
        move |source| Self::Compute { what, source }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Self::Io(e.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
