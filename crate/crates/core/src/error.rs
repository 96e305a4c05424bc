use thiserror::Error;

/// Errors raised by the arithmetic, series and verification layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero to working precision")]
    DivisionByZero,

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("insufficient X-degree: evaluation needs roughly D >= {required}, have {available}")]
    InsufficientDegree { required: usize, available: usize },

    #[error("incompatible operands: {0}")]
    Incompatible(String),

    #[error("character is not primitive: {0}")]
    NotPrimitive(String),

    #[error("ramified evaluation: {0}")]
    Ramified(String),

    #[error("unit-fixing rule selects no canonical generator for {0}")]
    UnitFixing(String),

    #[error("bad prime {0}: divides level or discriminant")]
    BadPrime(u64),

    #[error("bad regulator c = {c}: regularization factor not invertible in component {component}")]
    BadRegulator { c: u64, component: u32 },

    #[error("degenerate pairing: {0}")]
    DegeneratePairing(String),

    #[error("structural error: {0}")]
    Structure(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("serialization error: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}
