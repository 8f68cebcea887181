use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("oriented cycle: {}", .0.join(" -> "))]
    OrientedCycle(Vec<String>),
    #[error("domain mismatch: expected {expected} entries, found {found}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: expected ambient dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix for arrow `{arrow}` has shape {found:?}, expected {expected:?}")]
    BadMatrixShape {
        arrow: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("representations live over different quivers or fields")]
    RepMismatch,
    #[error("subspace sweep needs {needed} tuples, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("weight is not effective for this dimension vector")]
    NotEffective,
    #[error("representation is not semistable for the given weight")]
    NotSemistable,
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("point does not lie in the cone")]
    OutsideCone,
    #[error("dimension vector must be nonzero")]
    ZeroDimensionVector,
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid instance: {0}")]
    Semantic(String),
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("missing required option: {0}")]
    MissingOption(String),
}

impl Error {
    /// Errors caused by the input document or command line rather than the engines.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::Semantic(_)
                | Error::UnknownCommand(_)
                | Error::MissingOption(_)
        )
    }
}
