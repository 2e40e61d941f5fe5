use thiserror::Error;

/// Errors raised by the algebraic and combinatorial operations of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mismatched variable counts: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("too many variables: {0} (at most {max})", max = crate::algebra::MAX_VARS)]
    TooManyVariables(usize),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ambient module mismatch: {0}")]
    AmbientMismatch(String),

    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("zero linear form at position {0}")]
    ZeroForm(usize),

    #[error("duplicate hyperplane: forms {first} and {second} are proportional")]
    DuplicateHyperplane { first: usize, second: usize },

    #[error("form {index} is not central (constant term {constant}); cone the arrangement first")]
    NotCentral { index: usize, constant: String },

    #[error("not a flat of the arrangement: {0:?}")]
    NotAFlat(Vec<usize>),

    #[error("hyperplane index {index} out of range for {n} hyperplanes")]
    HyperplaneOutOfRange { index: usize, n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("derivation {0} is not logarithmic for the arrangement")]
    NotLogarithmic(usize),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
