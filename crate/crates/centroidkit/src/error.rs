use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dim(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("Jacobi identity fails at triple ({i}, {j}, {k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("spectrum is not rational: {0}")]
    NotSplit(String),
    #[error("operators do not commute: {0}")]
    NotCommuting(String),
    #[error("not a toral subalgebra: {0}")]
    NotToral(String),
    #[error("resource limit exceeded: {0}")]
    Limit(String),
    #[error("json: {0}")]
    Json(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
