use crate::group::Signature;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("group signature mismatch: expected {expected}, found {found}")]
    SignatureMismatch { expected: Signature, found: Signature },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("element is not integral (negative valuation)")]
    NotIntegral,

    #[error("polynomial {index} has no unit coefficient")]
    NoUnitCoefficient { index: usize },

    #[error("inconclusive at the current precision: {0}")]
    InconclusivePrecision(String),

    #[error("operation is only supported for rank-1 groups")]
    UnsupportedRank,

    #[error("point is not in the tropical hypersurface")]
    NotInHypersurface,

    #[error("initial polynomial {0} has no nonzero rational root")]
    NoRationalRoot(String),

    #[error("{0} is not a tropical root of the polynomial")]
    NotRootValuation(String),

    #[error("iteration budget of {budget} exceeded")]
    IterationBudgetExceeded { budget: usize },

    #[error("residual valuation did not increase at iteration {iteration}")]
    Stalled { iteration: usize },

    #[error("polynomial has no terms")]
    EmptyPolynomial,

    #[error("slicing needs at least two variables; use the univariate path")]
    UnivariateSlice,

    #[error("zero coefficient term")]
    ZeroCoefficient,

    #[error("syntax error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
