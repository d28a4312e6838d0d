use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field parameters must be positive (p = {p}, r = {r})")]
    ZeroParameter { p: u64, r: u32 },

    #[error("q = {q} exceeds the configured budget of {budget}")]
    BudgetExceeded { q: u128, budget: u64 },

    #[error("element does not belong to F_{expected} (it was built for F_{found})")]
    FieldMismatch { expected: u64, found: u64 },

    #[error("zero has no discrete logarithm")]
    ZeroLog,

    #[error("character order {n} does not divide q - 1 = {q_minus_1}")]
    OrderDoesNotDivide { n: u64, q_minus_1: u64 },

    #[error("cyclotomic orders differ ({0} vs {1})")]
    CyclotomicOrderMismatch(u32, u32),

    #[error("{k} is not a unit modulo {n}")]
    NotAUnit { k: i64, n: u32 },

    #[error("element of Z[zeta_7] is not fixed by sigma_2")]
    NotSigma2Fixed,

    #[error("expected an element of Z[zeta_{expected}], got order {found}")]
    WrongCyclotomicOrder { expected: u32, found: u32 },

    #[error("character product is trivial")]
    TrivialProduct,

    #[error("at least two characters are required")]
    TooFewCharacters,

    #[error("multi-character Jacobi sums are limited to three characters (got {0})")]
    UnsupportedArity(usize),

    #[error("value is not a rational integer: {0}")]
    NotRationalInteger(String),

    #[error("expected {expected} values, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("Newton identities produced a non-integral coefficient at degree {0}")]
    NonIntegral(usize),

    #[error("functional equation fails at coefficient {k}")]
    FunctionalEquation { k: usize },

    #[error("inverse roots violate |alpha| = sqrt(q): relative residual {0:e}")]
    RiemannHypothesis(f64),

    #[error("p = 7 is ramified and excluded")]
    Ramified,

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("precondition violated: {0}")]
    Precondition(String),
}
