use alloc::string::String;

/// Errors raised by the arithmetic and the ramification pipelines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("modulus is not irreducible over F_p")]
    NotIrreducible,
    #[error("linear system is singular")]
    SingularSystem,
    #[error("division by a series indistinguishable from zero")]
    DivisionByIndistinguishableZero,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(&'static str),
    #[error("series is not a p-th power")]
    NotAPthPower,
    #[error("series is not a uniformizer (valuation must be 1)")]
    NotAUniformizer,
    #[error("k must be prime to p")]
    KDivisibleByP,
    #[error("not an Eisenstein polynomial: {0}")]
    NotEisenstein(String),
    #[error("not a single-break extension: {0}")]
    NotSingleBreak(String),
    #[error("Artin-Schreier generators are dependent modulo wp(K)")]
    DependentGenerators,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("enumeration of {size} classes exceeds the cap of {cap}")]
    EnumerationTooLarge { size: u128, cap: u128 },
    #[error("Artin-Schreier reduction failed: {0}")]
    ReductionFailed(String),
    #[error("tower residual is nonzero: {0}")]
    ResidualNonzero(String),
}

pub type Result<T> = core::result::Result<T, Error>;
