use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_THRESHOLD: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Solver(#[from] graphpde::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(
                graphpde::Error::PicardNotConverged { .. }
                | graphpde::Error::GroundStateNotConverged { .. }
                | graphpde::Error::EigenNotConverged { .. },
            ) => EXIT_NOT_CONVERGED,
            _ => EXIT_USAGE,
        }
    }
}
