use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by the zero polynomial")]
    ZeroPolynomialDivision,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must have degree at least one")]
    ConstantPolynomial,
    #[error("rational factorization capped at degree 32, got {0}")]
    FactorDegreeCap(usize),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix must be square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix dimensions must be positive")]
    EmptyDimension,
    #[error("polynomials are not coprime (gcd = {0})")]
    NotCoprime(String),
    #[error("matrix is not good cyclic")]
    NotGoodCyclic,
    #[error("trace condition violated: {0}")]
    TraceMismatch(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("operation requires characteristic {expected}, field has {actual}")]
    WrongCharacteristic { expected: u64, actual: u64 },
    #[error("scalar coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("matrix must not be scalar")]
    ScalarInput,
    #[error("minimal polynomial is not a prime power")]
    NotPrimaryPower,
    #[error("minimal polynomial has a single irreducible divisor")]
    NotRearrangeable,
    #[error("no such witness: {0}")]
    NoWitness(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
