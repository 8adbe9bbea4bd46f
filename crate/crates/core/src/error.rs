use thiserror::Error;

/// Errors produced by the quasigroup toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order must be at least 1")]
    EmptyCarrier,
    #[error("table has {actual} entries, expected {expected} for order {order}")]
    TableShape {
        order: usize,
        expected: usize,
        actual: usize,
    },
    #[error("element {value} out of range for order {order}")]
    ElementOutOfRange { value: usize, order: usize },
    #[error("row {row} is not a permutation (symbol {symbol} repeated)")]
    RowNotPermutation { row: usize, symbol: usize },
    #[error("column {column} is not a permutation (symbol {symbol} repeated)")]
    ColumnNotPermutation { column: usize, symbol: usize },
    #[error("not a permutation: {0:?}")]
    NotPermutation(Vec<usize>),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("{what}: {actual} exceeds bound {limit}")]
    BoundExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unbound variable '{0}'")]
    UnboundVariable(char),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
