use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: u32 },

    #[error("polynomial is not multihomogeneous")]
    NotMultihomogeneous,

    #[error("bad arity: {0}")]
    BadArity(String),

    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { pos: usize, name: String },

    #[error("element is not a polynomial in x alone")]
    NotPurelyX,

    #[error("invalid bracket-monomial: {0}")]
    InvalidBracket(String),

    #[error("bracket-monomial is not semi-reduced")]
    NotSemiReduced,

    #[error("bracket-monomial is not reduced")]
    NotReduced,

    #[error("multidegree too small: total degree {0} < 2")]
    DegreeTooSmall(u32),

    #[error("malformed multidegree: {0}")]
    MalformedMultiDegree(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
