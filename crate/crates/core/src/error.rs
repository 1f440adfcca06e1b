use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("laurent depth {available} too small, need {needed}")]
    DepthExceeded { needed: i64, available: i64 },

    #[error("evaluation at a pole: {0}")]
    Pole(String),

    #[error("weights are not generic: {0}")]
    NonGeneric(String),

    #[error("input is not symmetric in x1, x2")]
    NotSymmetric,

    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("singular linear system")]
    Singular,

    #[error("denominator root outside the base field: {0}")]
    UnsupportedPole(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
