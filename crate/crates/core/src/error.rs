use thiserror::Error;

/// Errors raised by the exact-arithmetic, continued-fraction and tower layers.
///
/// Variants fall into two classes: invalid input (the caller asked for
/// something outside an operation's domain) and verification failures (an
/// identity that must hold exactly did not). [`Error::is_verification`]
/// distinguishes them; the CLI maps the classes to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative input {0} has no real square root")]
    NegativeInput(String),
    #[error("zero has no squarefree decomposition")]
    ZeroInput,
    #[error("radicand mismatch: sqrt({0}) vs sqrt({1})")]
    RadicandMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is a perfect square")]
    SquareInput(String),
    #[error("period length {0} is not supported (expected 1, 2 or 3)")]
    UnsupportedPeriod(usize),
    #[error("family value {0} is not positive")]
    NonPositiveFamilyValue(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("parameters outside the supported range: {0}")]
    OutOfRange(String),
    #[error("the continued fraction does not pass the convergence certificate")]
    NotConvergent,
    #[error("E21 vanishes; the eigenvalue formula does not determine a value")]
    VanishingE21,
    #[error("negative discriminant {0}: the matrix is elliptic")]
    EllipticMatrix(String),
    #[error("({x}, {y}) is not a unit of Z[sqrt({m})]: x^2 - m*y^2 = {norm}")]
    NotAUnit {
        m: u64,
        x: String,
        y: String,
        norm: String,
    },
    #[error("tower level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),
    #[error("level {0} has no parent level")]
    NoParentLevel(u32),
    #[error("embedding index {k} is invalid at level {level} (need odd 1 <= k < 2^(level+1))")]
    BadEmbedding { k: u64, level: u32 },
    #[error("quotient is not integral: {0}")]
    NonIntegralQuotient(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// True when the error reports a violated identity rather than bad input.
    pub fn is_verification(&self) -> bool {
        matches!(self, Error::Verification(_) | Error::NonIntegralQuotient(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
