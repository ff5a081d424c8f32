use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed data, e.g. an empty dataset or a non-positive time.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Arguments that violate an operation's preconditions.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A numeric argument outside the function's domain.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Whether the error stems from numeric evaluation rather than bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Convergence(_))
    }
}
