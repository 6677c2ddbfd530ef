use thiserror::Error;

use crate::bijection::Refusal;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("map is not a bijection of N: {0}")]
    NotBijection(Refusal),

    #[error("arity mismatch: expected {expected} argument(s), got {found}")]
    Arity { expected: usize, found: usize },

    #[error("invalid expression at byte {position}: {message}")]
    Expression { position: usize, message: String },

    #[error("checkpoint {path}: {message}")]
    Checkpoint { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
