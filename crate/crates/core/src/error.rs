use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field of size {p}^{digits} exceeds the 2^48 element budget")]
    SizeBudgetExceeded { p: u64, digits: u64 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("element index {index} out of range for a field of size {order}")]
    ElementOutOfRange { index: u64, order: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("conjugator must be nonzero")]
    ZeroConjugator,
    #[error("enumeration of {needed} items exceeds the budget of {budget}")]
    EnumerationBudgetExceeded { needed: u128, budget: u128 },
    #[error("could not factor {0} within the trial-division budget")]
    FactorizationBudgetExceeded(u64),

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("indices must be strictly increasing")]
    NotStrictlyIncreasing,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,

    #[error("invalid code parameters: {0}")]
    InvalidParameters(String),
    #[error("G_0 does not have full row rank, column distances are undefined")]
    RankDeficientG0,
    #[error("{what} budget exceeded: {needed} > {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error("kernel has only {found} independent rows within degree {bound}, expected {expected}")]
    KernelRankDeficient {
        found: usize,
        expected: usize,
        bound: usize,
    },
    #[error("lambda values must be nonzero")]
    ZeroLambda,
    #[error("code is not MDP: {0}")]
    NotMdp(String),
    #[error("invalid probe configuration: {0}")]
    InvalidConfig(String),
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn budget(what: &'static str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded {
            what,
            needed,
            budget,
        })
    } else {
        Ok(())
    }
}
