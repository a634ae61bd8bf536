use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(#[from] clap::Error),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numeric(conecollapse::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for anything the caller can fix in the invocation, 3 for numerics.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numeric(_) => 3,
            _ => 2,
        }
    }
}

impl From<conecollapse::Error> for CliError {
    fn from(e: conecollapse::Error) -> Self {
        match e {
            conecollapse::Error::Domain(msg) => CliError::Config(msg),
            conecollapse::Error::Specfun(s @ conecollapse::specfun::SpecfunError::Domain { .. }) => {
                CliError::Config(s.to_string())
            }
            other => CliError::Numeric(other),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub(crate) fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}
