use thiserror::Error;

/// Errors surfaced by the algebra kernel and the knot pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: `{0}` vs `{1}`")]
    RingMismatch(String, String),
    #[error("negative exponent")]
    NegativeExponent,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("block split {split} exceeds variable count {nvars}")]
    BadBlockSplit { split: usize, nvars: usize },
    #[error("substitution leaves `{0}` unbound")]
    UnboundVariable(String),
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("resultant undefined: both operands constant in `{0}`")]
    ConstantResultant(String),
    #[error("polynomial is not univariate in `{0}`")]
    NotUnivariate(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("slope {0}/{1} is not primitive")]
    NonCoprimeSlope(i64, i64),
    #[error("slope 0/0 is invalid")]
    ZeroSlope,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("curve ideal is not principal: {0}")]
    NotPrincipal(String),
    #[error("no characters: elimination produced the unit ideal")]
    UnitCharacterIdeal,
    #[error("abelian factor x^2 - z - 2 does not divide the character ideal")]
    MissingAbelianFactor,
    #[error("point {0} does not lie on the curve")]
    PointOffCurve(String),
    #[error("curve is singular at {0}")]
    SingularPoint(String),
    #[error("function vanishes identically on the curve")]
    ZeroOnCurve,
    #[error("curve is singular: {0}")]
    SingularCurve(String),
    #[error("generic draws exhausted: {0}")]
    RetriesExhausted(String),
    #[error("no admissible sign assignment for ideal-point norm")]
    NoSignAssignment,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
