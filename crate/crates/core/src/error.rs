use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("GF({p}^{e}) is outside the supported range (p in {{2,3}}, e <= 8)")]
    FieldOutOfRange { p: u32, e: u32 },
    #[error("modulus is not irreducible over the prime field")]
    ReducibleModulus,
    #[error("sub-degree {sub} does not divide extension degree {e}")]
    BadSubDegree { e: u32, sub: u32 },
    #[error("field has no distinguished subfield")]
    MissingSubfield,
    #[error("field is not a Conway-compatible subfield")]
    NotASubfield,
    #[error("coefficient vector is malformed")]
    BadCoefficients,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("no solution found for {0}")]
    NoSolution(&'static str),
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration cap of {cap} points exceeded")]
    CapExceeded { cap: usize },
    #[error("form is degenerate")]
    Degenerate,
    #[error("singular-vector count {count} matches neither plus nor minus type")]
    UnknownType { count: u64 },
    #[error("element is not an isometry of the form")]
    NotAnIsometry,
    #[error("order gate failed for {what}: chain order {got}, expected {expected}")]
    OrderGate {
        what: String,
        got: String,
        expected: String,
    },
    #[error("verification check failed: {0}")]
    CheckFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
