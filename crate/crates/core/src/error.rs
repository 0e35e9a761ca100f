use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier size must be between 1 and {max}, got {got}")]
    InvalidCarrier { got: usize, max: usize },
    #[error("element {element} is out of range for a carrier of size {q}")]
    InvalidElement { element: usize, q: usize },
    #[error("table has {got} entries, expected {q}^{arity} = {expected}")]
    TableLength {
        q: usize,
        arity: usize,
        expected: usize,
        got: usize,
    },
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("carrier mismatch: {left} vs {right}")]
    CarrierMismatch { left: usize, right: usize },
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("duplicate operation name `{0}`")]
    DuplicateOp(String),
    #[error("variable x{index} is out of range (only {available} available)")]
    VariableOutOfRange { index: usize, available: usize },
    #[error("invalid center: {0}")]
    InvalidCenter(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("{count} lifted unaries exceed the cap of {cap}")]
    UnaryCap { count: usize, cap: usize },
    #[error("lifted unary `{0}` is not an operation of the algebra")]
    MissingLift(String),
    #[error("term parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("{0}")]
    Invalid(String),
}
