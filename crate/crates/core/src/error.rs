use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed arguments: wrong arity, duplicate sample points, overlapping
    /// variable sets and the like.
    #[error("invalid input: {0}")]
    Input(String),

    /// The requested procedure needs information the black box does not carry.
    #[error("configuration error: {0}")]
    Config(String),

    /// A result that can only arise after an earlier zero test answered
    /// wrongly. The run is aborted instead of emitting a wrong monomial.
    #[error("inconsistent oracle answers: {0}")]
    Inconsistent(String),

    /// The same exponent vector was about to be emitted twice.
    #[error("monomial {0} emitted twice")]
    Repetition(String),

    #[error("division by zero while evaluating a derived black box")]
    DivisionByZero,

    /// Exhaustive procedures refuse to start when the work exceeds the budget.
    #[error("resource budget exceeded: {0}")]
    Budget(String),

    /// The evaluation was refused because its run was cancelled.
    #[error("evaluation cancelled")]
    Cancelled,
}
