use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected an odd positive integer")]
    NotOdd,
    #[error("expected a positive integer, got 0")]
    Zero,
    #[error("table size must be at least 2, got {0}")]
    TableTooSmall(usize),
    #[error("table entry a({0}) overflows a 64-bit word")]
    TableOverflow(usize),
    #[error("A(r={r}, s={s}) is undefined: need r >= 1 and s <= r")]
    InvalidAltParams { r: usize, s: usize },
    #[error("sequence {seq:?} is not an alternating-parity sequence in 1..={r}")]
    NotAltSeq { seq: Vec<usize>, r: usize },
    #[error("involution requires r and s of equal parity (r={r}, s={s})")]
    ParityMismatch { r: usize, s: usize },
    #[error("materialized enumeration is limited to r <= {max}, got {r}; use the streaming iterator")]
    EnumerationTooLarge { r: usize, max: usize },
    #[error("periodic pattern must be non-empty")]
    EmptyPattern,
    #[error("binet form requires r >= 1 and t >= 2 (r={r}, t={t})")]
    BinetDomain { r: u64, t: u64 },
    #[error("divisor k must be positive")]
    ZeroDivisor,
    #[error("exponent {exponent} of the binary expansion is not divisible by k={k}")]
    ExponentNotDivisible { exponent: u64, k: u64 },
    #[error("arity mismatch: expected {expected}, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable index {0} already occurs in a term")]
    NotSquarefree(usize),
    #[error("variable index {index} outside 1..={arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("r={r} exceeds the term-count guard of {max}")]
    ArityGuard { r: usize, max: usize },
    #[error("subset expansion refused: digit sum {digit_sum} exceeds {max}")]
    SubsetBlowup { digit_sum: u64, max: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}
