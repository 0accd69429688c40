use thiserror::Error;

/// Errors raised by the exact-decomposition machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("parametrization is not an immersion at t = {0} (derivative drops rank)")]
    NotImmersion(String),
    #[error("scheme components share a support point: {0}")]
    CoincidentSupport(String),
    #[error("form is not in the span of the Veronese image of the scheme")]
    NotInSpan,
    #[error("scheme is contained in a line")]
    ContainedInLine,
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("root-finding precision insufficient (residual {residual} at {bits} bits)")]
    PrecisionExhausted { bits: u32, residual: String },
    #[error("decomposition length {length} exceeds the guaranteed bound {bound}; this is a bug")]
    BoundViolation { length: usize, bound: i64 },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
