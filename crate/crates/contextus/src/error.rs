//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{what}: size {n} exceeds the cap of {max}")]
    Capacity {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("operator {op} is not Hermitian")]
    NonHermitian { op: String },

    #[error("operators {a} and {b} do not commute")]
    NonCommuting { a: String, b: String },

    #[error("outcome {outcome} of {op} has zero probability")]
    ImpossibleOutcome { op: String, outcome: String },

    #[error("{what} must not be empty")]
    EmptyInput { what: &'static str },

    #[error("not a valid poset: {0}")]
    InvalidPoset(String),

    #[error("down-set length {got} does not match poset size {expected}")]
    MismatchedBase { expected: usize, got: usize },

    #[error("{sub} is not a subcontext of {sup}")]
    NotASubcontext { sub: String, sup: String },

    #[error("{op} is not a member of context {context}")]
    NotAMember { op: String, context: String },

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("computation is not deterministic at input {input}")]
    NonDeterministic { input: String },

    #[error("function table is partial: {got} of {expected} inputs present")]
    PartialTable { expected: usize, got: usize },

    #[error("invalid measurement plan: {0}")]
    Plan(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity { .. } => 4,
            Error::NonDeterministic { .. }
            | Error::PartialTable { .. }
            | Error::Plan(_)
            | Error::ImpossibleOutcome { .. } => 3,
            _ => 2,
        }
    }
}
