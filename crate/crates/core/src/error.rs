use num_bigint::BigInt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("difference order {order} needs more than {len} samples")]
    OrderTooLarge { order: usize, len: usize },

    #[error("step must be nonzero")]
    ZeroStep,

    #[error("polynomial degree must be at least 1")]
    DegreeTooLow,

    #[error("interval straddles the integer {0}; integrality must be decided exactly")]
    StraddlesInteger(BigInt),

    #[error("interval comparison undecided at the {bits}-bit cap")]
    Undecided { bits: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("search of {requested} points exceeds the budget of {budget}")]
    BudgetExceeded { requested: u128, budget: u128 },

    #[error("invalid sample grid: {0}")]
    InvalidGrid(String),

    #[error("interval divisor contains zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),
}
