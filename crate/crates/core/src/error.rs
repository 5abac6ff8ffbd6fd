use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime in (2, 2^31)")]
    NotPrime(u64),
    #[error("operands live over different primes ({0} vs {1})")]
    PrimeMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operands belong to different polynomial rings")]
    RingMismatch,
    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("at most {max} variables are supported, asked for {got}")]
    TooManyVariables { max: usize, got: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Where a Gröbner computation stood when it ran out of budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetDiagnostics {
    pub steps: u64,
    pub elapsed_ms: u64,
    pub basis_len: usize,
    pub pending_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error(
        "budget exhausted after {} reduction steps / {} ms (basis {}, {} pairs pending)",
        .0.steps, .0.elapsed_ms, .0.basis_len, .0.pending_pairs
    )]
    Budget(BudgetDiagnostics),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("frame does not match the splitting type: {0}")]
    FrameShape(String),
    #[error("projection not properly ramified after {0} draws")]
    ImproperRamification(usize),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("{0} exceeds the exhaustive-search budget")]
    SearchTooLarge(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
