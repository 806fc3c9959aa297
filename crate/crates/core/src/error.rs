use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("index out of range: {0}")]
    IndexError(String),
    #[error("denominator vanishes at q = {0}")]
    PoleAtQ(String),
    #[error("series variables differ: {0} vs {1}")]
    VariableMismatch(char, char),
    #[error("series has no multiplicative inverse (constant term not invertible)")]
    NotInvertible,
    #[error("valuation error: {0}")]
    ValuationError(String),
    #[error("expansion input too short: need {needed} terms, have {have}")]
    InputTooShort { needed: usize, have: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("tolerance {tol:e} unattainable at {prec} bits")]
    PrecisionError { tol: f64, prec: usize },
    #[error("no certified sign change found below z = {0}")]
    SearchExhausted(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
