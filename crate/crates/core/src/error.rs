use thiserror::Error;

use crate::exact::{BaseField, Value};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("{0} is not a prime below 2^31")]
    NotAPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(BaseField, BaseField),
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor is not monic in y")]
    NonMonicDivisor,
    #[error("polynomial is constant in y")]
    ConstantPolynomial,
    #[error("key polynomial is not monic in y")]
    NonMonic,
    #[error("value not increased: {beta} <= {current}")]
    ValueNotIncreased { beta: Box<Value>, current: Box<Value> },
    #[error("bad degree: {0}")]
    BadDegree(String),
    #[error("shape violation: {0}")]
    ShapeViolation(String),
    #[error("not normalized: {0}")]
    NotNormalized(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("index {index} out of range for chain of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("chain has no omega entry")]
    OmegaAbsent,
    #[error("chain already ends in an omega entry")]
    OmegaPresent,
    #[error("not a polynomial in x and y: {0}")]
    NotPolynomial(String),
    #[error("the zero polynomial has no order")]
    ZeroPolynomial,
    #[error("polynomial is a unit at the origin")]
    UnitPolynomial,
    #[error("polynomial has a pole at the origin")]
    PoleAtOrigin,
    #[error("no pure power of y in the lowest-order form")]
    DegenerateDirection,
    #[error("iteration limit {0} reached")]
    IterationLimit(usize),
    #[error("center is not rational over the base field: {0}")]
    NonRationalCenter(String),
    #[error("chain already defines the target valuation")]
    ChainComplete,
    #[error("chain value exceeds the target valuation at {0}")]
    ChainExceedsOracle(String),
    #[error("parameter {t} outside the segment (1, {hi}]")]
    OutOfSegment { t: Box<Value>, hi: Box<Value> },
    #[error("residue undefined: {0}")]
    ResidueUndefined(String),
    #[error("valuations are not totally ordered")]
    NotTotallyOrdered,
}

impl Error {
    /// True for malformed input (bad syntax, bad file contents), as opposed to
    /// well-formed input that violates a mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Format(_) | Error::NotAPrime(_))
    }
}
