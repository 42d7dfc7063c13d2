//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid space spec: {0}")]
    InvalidSpec(String),
    #[error("window exceeded: index {index} > window {window}")]
    WindowExceeded { index: u64, window: u64 },
    #[error("field mismatch: real-tagged oracle received a complex coefficient")]
    FieldMismatch,
    #[error("zero vector not allowed here")]
    ZeroVector,
    #[error("budget exceeded for {what}: needed {needed}, budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u64,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
