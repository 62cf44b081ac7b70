use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("product of two expressions that both contain generic symbols is not supported")]
    UnsupportedGenericProduct,
    #[error("square root of negative rational {0}")]
    NegativeRadicand(String),
    #[error("square root of {0} leaves the multi-quadratic field")]
    UnsupportedRadicand(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by the zero rational function")]
    DivisionByZeroFunction,
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("family {family} expects parameters {expected}")]
    ArityMismatch { family: String, expected: String },
    #[error("parameter constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("unsupported parameter field: {0}")]
    UnsupportedParameterField(String),
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("initial point t0 = {0} is a singular point of the equation")]
    SingularInitialPoint(f64),
    #[error("numeric evaluation needs concrete parameters, found generic symbol {0}")]
    GenericParameter(String),
    #[error("step size underflow at t = {t} (h = {h})")]
    StepFailure { t: f64, h: f64 },
    #[error("need at least {needed} uniformly spaced samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("map denominator vanished on {dropped} of {total} samples")]
    DenominatorBlowup { dropped: usize, total: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
