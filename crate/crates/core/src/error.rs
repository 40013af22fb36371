use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("unsupported field of order {q}")]
    UnsupportedField { q: u64 },
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("generator t is not primitive: order {order}, expected {expected}")]
    NotPrimitive { order: u32, expected: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ambiguous notation `{text}` at bytes {start}..{end}: readings {readings:?}")]
    AmbiguousNotation { text: String, start: usize, end: usize, readings: Vec<String> },
    #[error("parameter mismatch: {0}")]
    Mismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("leading coefficient is not a unit")]
    NonUnitLeading,
    #[error("degree {degree} exceeds window {window}")]
    DegreeExceedsWindow { degree: usize, window: usize },
    #[error("idempotents need (l-1) | (q-1): l = {l}, q = {q}")]
    IdempotentPrecondition { l: usize, q: u32 },
    #[error("generator is not a right divisor of x^{n} - 1")]
    NotRightDivisor { n: usize },
    #[error("rank deficiency: expected {expected}, got {got}")]
    RankDeficient { expected: usize, got: usize },
    #[error("structural anomaly: {0}")]
    Structural(String),
    #[error("sigma moves idempotent gamma_{index}")]
    SigmaMovesIdempotent { index: usize },
    #[error("component {index}: {reason}")]
    Component { index: usize, reason: Box<Error> },
    #[error("not a Gray matrix: {0}")]
    NotGrayMatrix(String),
    #[error("operation requires F_4, got F_{0}")]
    NotF4(u32),
    #[error("illegal nucleotide `{0}`")]
    InvalidBase(char),
    #[error("budget exhausted after {spent} steps")]
    BudgetExhausted { spent: u64 },
}
