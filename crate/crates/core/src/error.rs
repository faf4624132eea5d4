use thiserror::Error;

use crate::module::ModuleViolation;
use crate::monoid::LawViolation;

/// Errors raised by the computation engine.
///
/// The variants map onto the three exit classes of the command-line driver:
/// validation problems with the input, budget overruns, and internal oracle
/// mismatches (which indicate a bug rather than a bad input).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("consecutive maps do not compose to zero")]
    CompositionNonzero,

    #[error("the supplied eigenvalues do not annihilate the operator")]
    NotAnnihilated,

    #[error("monoid table violates the monoid laws: {0:?}")]
    InvalidMonoid(Vec<LawViolation>),

    #[error("module violates the functor laws: {0:?}")]
    InvalidModule(Vec<ModuleViolation>),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("{requested} basis elements exceed the budget of {cap}")]
    ComplexityBudget { requested: usize, cap: usize },

    #[error("boundary does not preserve the {0}")]
    NotAComplex(String),

    #[error("weight-{weight} summand is not preserved by the boundary in degree {degree}")]
    WeightNotPreserved { weight: usize, degree: usize },

    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Short machine-readable class name.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ComplexityBudget { .. } => "ComplexityBudget",
            Error::OracleMismatch(_)
            | Error::CompositionNonzero
            | Error::NotAnnihilated
            | Error::WeightNotPreserved { .. } => "OracleMismatch",
            Error::Parse { .. } => "ParseError",
            _ => "ValidationError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
