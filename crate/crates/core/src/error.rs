use thiserror::Error;

/// Errors raised by the algebra, point-set and dynamics routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31 - 1]")]
    NotPrime(u64),
    #[error("mixed moduli: {0} and {1}")]
    ModulusMismatch(u32, u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("singular matrix (rank {rank} < {dim})")]
    SingularMatrix { rank: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("marked term of generator {0} is not its leading term under the order")]
    InconsistentMarking(usize),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("coordinate {value} out of range for p = {p}")]
    CoordinateOutOfRange { value: u32, p: u32 },
    #[error("duplicate point {0:?}")]
    DuplicatePoint(Vec<u32>),
    #[error("set is not downward closed")]
    NotDownwardClosed,
    #[error("index {index} out of range (n = {n})")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("empty staircase")]
    EmptyStaircase,
    #[error("empty point set")]
    EmptyPointSet,
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("invalid linear shift: {0}")]
    InvalidShift(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("standard monomials are not basic for the input points")]
    NotBasic,
    #[error("witness weight {0:?} does not reproduce the candidate staircase")]
    WitnessMismatch(Vec<i64>),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
