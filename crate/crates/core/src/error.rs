use thiserror::Error;

/// Location-aware failure while reading one of the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("stabilizers do not commute: X row {x_row} and Z row {z_row} overlap oddly")]
    Commutation { x_row: usize, z_row: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("lift sizes differ: {0} vs {1}")]
    LiftMismatch(usize, usize),

    #[error("code has dimension zero, distance is undefined")]
    TrivialCode,

    #[error("invalid option: {0}")]
    InvalidOption(String),

    #[error("boundary maps do not compose to zero at degree {0}")]
    NotAComplex(i32),

    #[error("chain map squares fail to commute at degree {0}")]
    NotAChainMap(i32),

    #[error("Z logical of weight {} lies inside Z stabilizer {row}", witness.len())]
    Unreasonable { row: usize, witness: Vec<usize> },

    #[error("stage broke an invariant: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
