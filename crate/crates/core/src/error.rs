use crate::specfun::SpecfunError;
use thiserror::Error;

/// Errors raised outside the special-function kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error("only {found} extrema found in the window, need at least {needed}")]
    InsufficientResolution { found: usize, needed: usize },
    #[error("wall event could not be localized near t = {t}")]
    StepFailure { t: f64 },
    #[error("integrated trajectory contradicts the {expected} regime: {detail}")]
    Inconsistent { expected: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
