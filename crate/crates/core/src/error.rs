use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty sequence")]
    EmptyInput,

    #[error("invalid token {token:?} at line {line}: expected one of '+', '-', {neg}, {pos}")]
    InvalidToken {
        token: String,
        line: usize,
        neg: i64,
        pos: i64,
    },

    #[error("value {value} is not in the alphabet {{-{r}, {s}}}")]
    ValueOutOfAlphabet { value: i64, r: i64, s: i64 },

    #[error("alphabet parameters must be positive (r = {r}, s = {s})")]
    NonPositiveAlphabet { r: i64, s: i64 },

    #[error("window starting at {start} of length {len} does not fit in [1, {n}]")]
    WindowOutOfRange { start: usize, len: usize, n: usize },

    #[error("position {pos} is outside [1, {n}]")]
    PositionOutOfRange { pos: usize, n: usize },

    #[error("parity mismatch: t = {t} and k = {k} must have the same parity")]
    Parity { k: i64, t: i64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("block length k = {k} exceeds sequence length n = {n}")]
    BlockTooLong { k: usize, n: usize },

    #[error("operation requires a ±1 sequence (got alphabet {{-{r}, {s}}})")]
    NotPlusMinusOne { r: i64, s: i64 },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("expected sequence of length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("enumeration of 2^{bits} sequences exceeds the budget of {budget}")]
    BudgetExceeded { bits: u32, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
