use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parse error at line {line}: {message}")]
    ParseAt { line: usize, message: String },
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("invalid group: {}", .0.join("; "))]
    Group(Vec<String>),
    #[error("invalid algebra: {}", .0.join("; "))]
    Algebra(Vec<String>),
    #[error("invalid module: {}", .0.join("; "))]
    Module(Vec<String>),
    #[error("{0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Two certified decision procedures disagreed.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
