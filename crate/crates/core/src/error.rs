use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MtvError {
    #[error("pole: {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("symbol {0} has no value in the evaluation environment")]
    MissingSymbol(String),

    #[error("word {0} is not admissible (outermost entry is an unbarred 1); regularise it first")]
    Inadmissible(String),

    #[error("tolerance {requested:e} not reached; achieved bound {achieved:e}")]
    ToleranceNotReached { requested: f64, achieved: f64 },

    #[error("hypergeometric parameters are not zero-balanced: a+b+c-d-e = {0}")]
    NotBalanced(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("linear system has no solution: {0}")]
    NoSolution(String),

    #[error("linear system has no unique solution: {0}")]
    NotUnique(String),

    #[error("word {0} has no exact evaluation")]
    Unreducible(String),

    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, MtvError>;
