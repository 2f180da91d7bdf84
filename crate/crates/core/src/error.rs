use crate::value::V;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("illegal cut: {0}")]
    IllegalCut(String),
    #[error("illegal merge: {0}")]
    IllegalMerge(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unknown cell: {0}")]
    UnknownCell(V),
    #[error("no solution dividing {target} through {divisor}")]
    NoSolution { divisor: V, target: V },
    #[error("non-unique solution dividing {target} through {divisor}")]
    NonUniqueSolution { divisor: V, target: V },
    #[error("cell {0} is not divisible at {1}")]
    NotDivisible(V, String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("invalid choice data: {0}")]
    InvalidChoice(String),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
