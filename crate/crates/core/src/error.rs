use thiserror::Error;

use crate::oracle::QuadResult;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violated the precondition of the operation it was passed to.
    #[error("domain error: {0}")]
    Domain(String),

    /// Derivative data needed by a method was not supplied.
    #[error("missing derivative data: {0}")]
    MissingData(&'static str),

    /// A coefficient consumed on its branch of use came out negative.
    #[error("internal: moment `{name}` is {value:e} on its branch of use")]
    NegativeMoment { name: &'static str, value: f64 },

    /// The (rule, method) pair has no closed-form display.
    #[error("unsupported combination: {0}")]
    Unsupported(String),

    /// None of the requested methods has its hypotheses satisfied.
    #[error("no applicable method: {0}")]
    NoApplicableMethod(String),

    #[error("adaptive integration did not converge (estimate {:.17e}, error {:.3e})", .0.value, .0.abs_error_estimate)]
    NonConvergence(QuadResult),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown function id `{0}`")]
    UnknownFunction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
