use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("monomial {0} is not a product of {1} generators")]
    NotInImage(String, usize),

    #[error("no sample for m = {0}")]
    MissingSample(usize),

    #[error("need at least {needed} consecutive samples, have {have}")]
    InsufficientSamples { needed: usize, have: usize },

    #[error("finite differences did not stabilize: {0}")]
    NotStabilized(String),

    #[error("ideal does not have finite colength: {0}")]
    InfiniteColength(String),

    #[error("negative Euler characteristic {value} at j = {j}")]
    NegativeDimension { j: usize, value: String },

    #[error("surface is not bundle unstable: deg E - 2 deg L = {0} >= 0")]
    NotBundleUnstable(String),

    #[error("absolute value of zero is undefined")]
    ZeroInput,

    #[error("parse error in `{field}`: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}
