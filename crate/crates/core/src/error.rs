use thiserror::Error;

/// Errors produced by the numerical routines and the command-line layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite input: {0}")]
    NonFinite(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("inconsistent configuration: {0}")]
    Inconsistent(String),

    #[error("ideal vertices are not supported here: {0}")]
    IdealVertex(String),

    #[error("side {side}: {source}")]
    Side {
        side: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("root verification failed: {0}")]
    RootVerification(String),

    #[error("branch failure: {0}")]
    Branch(String),

    #[error("no sign change of the potential derivative on [{lo}, {hi}]")]
    Bracketing { lo: f64, hi: f64 },

    #[error("solver did not converge: {0}")]
    NoConvergence(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code for the CLI: 1 parse, 2 invalid configuration, 3 solver failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 1,
            Error::Domain(_)
            | Error::NonFinite(_)
            | Error::InvalidConfiguration(_)
            | Error::Degenerate(_)
            | Error::Inconsistent(_)
            | Error::IdealVertex(_) => 2,
            Error::Side { source, .. } => source.exit_code(),
            Error::RootVerification(_)
            | Error::Branch(_)
            | Error::Bracketing { .. }
            | Error::NoConvergence(_) => 3,
        }
    }

    pub(crate) fn on_side(self, side: usize) -> Error {
        Error::Side {
            side,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
