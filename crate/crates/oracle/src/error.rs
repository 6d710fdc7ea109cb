use thiserror::Error;

/// Errors raised by the tensor-space model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("state space for (m|n) = ({m}|{n}) and d = {d} exceeds the size limit")]
    TooLarge { m: usize, n: usize, d: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("{0} dimensions carry eigenvalues outside the searched range")]
    MissingEigenvalues(usize),
}

pub type Result<T> = std::result::Result<T, OracleError>;
