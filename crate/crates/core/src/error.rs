use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what}: requested {requested} exceeds the exhaustive-search budget of {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("sequence table covers values below {covered} but {requested} was requested")]
    NotCovered { covered: String, requested: String },

    #[error("rejection sampler gave up after {attempts} attempts; the random stream looks broken")]
    RngFault { attempts: u64 },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
