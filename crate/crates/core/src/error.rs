use thiserror::Error;

use crate::verify::Witness;

/// Errors raised by constructors, parsers and checkers.
///
/// Cell coordinates and symbols are stored 0-based; `Display` renders them
/// 1-based so messages line up with the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grid is empty")]
    EmptyGrid,
    #[error("grid is not square: {rows} rows but {cols} columns")]
    NotSquare { rows: usize, cols: usize },
    #[error("grid is ragged: row {} has {len} entries, expected {expected}", .row + 1)]
    Ragged {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("symbol {} at row {}, column {} is outside 1..={order}", .symbol + 1, .row + 1, .col + 1)]
    SymbolOutOfRange {
        row: usize,
        col: usize,
        symbol: usize,
        order: usize,
    },
    #[error("symbol {} repeated in row {}", .symbol + 1, .row + 1)]
    RowDuplicate { row: usize, symbol: usize },
    #[error("symbol {} repeated in column {}", .symbol + 1, .col + 1)]
    ColDuplicate { col: usize, symbol: usize },
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("invalid structure: {0}")]
    Violation(Witness),
    #[error("multiplier {h} is not coprime to order {order}")]
    NotCoprime { h: usize, order: usize },
    #[error("multiplier {h} must lie in 1..{order}")]
    MultiplierOutOfRange { h: usize, order: usize },
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),
    #[error("first row is not a permutation of 1..={0}")]
    NotPermutation(usize),
    #[error("symbol classes are not all the same size")]
    UnevenClasses,
    #[error("permutation of length {len} is invalid for order {order}")]
    BadPermutation { len: usize, order: usize },
    #[error("no squares selected")]
    EmptySelection,
    #[error("member index {index} out of range for a family of {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("squares have different orders ({expected} and {found})")]
    OrderMismatch { expected: usize, found: usize },
    #[error("arity {t} is invalid for a family of {size}")]
    BadArity { t: usize, size: usize },
    #[error("frequency squares have different parameters")]
    ParamMismatch,
    #[error("family has no members")]
    EmptyFamily,
    #[error("bad construction spec `{spec}`: {reason}")]
    BadSpec { spec: String, reason: String },
    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("structured document: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
