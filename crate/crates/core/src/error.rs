use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {p}^{e} exceeds 2^16")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {value} out of range for GF({q})")]
    ElementOutOfRange { value: u64, q: u32 },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix of {rows}x{cols} entries exceeds the 2^24 entry guard")]
    MatrixTooLarge { rows: usize, cols: usize },
    #[error("code too large to enumerate: q^dim = {q}^{dim} exceeds 2^26")]
    CodeTooLarge { q: u32, dim: usize },
    #[error("operation undefined for the zero code")]
    ZeroCode,
    #[error("enumeration guard exceeded: {0}")]
    SizeGuard(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("rejection sampling gave up after {attempts} attempts")]
    RejectionCapExceeded { attempts: u64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
