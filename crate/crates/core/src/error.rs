use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable mismatch: `{0}` vs `{1}`")]
    VariableMismatch(String, String),
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid monomial ordering: {0}")]
    InvalidOrder(String),
    #[error("ring mismatch between operands")]
    RingMismatch,
    #[error("ordering mismatch between operands")]
    OrderMismatch,
    #[error("quotient is infinite-dimensional")]
    InfiniteDimensional,
    #[error("cannot eliminate local variable `{0}`")]
    UnsoundElimination(String),
    #[error("zero ideal or element where a nonzero one is required")]
    ZeroDivisor,
    #[error("exact division failed: {0}")]
    InexactDivision(String),
    #[error("no stabilization within cap {cap}: {what}")]
    NoStabilization { cap: usize, what: String },
    #[error("the origin is not an isolated critical point")]
    NonIsolated,
    #[error("germ hypotheses fail: {0}")]
    Hypothesis(String),
    #[error("positive-dimensional critical cell in chart {0}")]
    PositiveDimensionalCell(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("critical locus off the singular line is not zero-dimensional")]
    NotZeroDimensional,
    #[error("non-Morse critical point off the singular line")]
    NonMorse,
    #[error("I-order is {0}, expected 2")]
    NotReducedCase(u32),
    #[error("deformation parameter must be specialized before this operation")]
    UnspecializedParameter,
    #[error("trial budget exhausted after {trials} trials: {stats}")]
    SearchExhausted { trials: usize, stats: String },
    #[error("unknown table id `{0}`")]
    UnknownTable(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
