use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("density is undefined on {0} vertices (needs at least 3)")]
    UndefinedDensity(usize),

    #[error("triple {0:?} does not have three distinct vertices")]
    DegenerateTriple([usize; 3]),

    #[error("pair ({0}, {1}) is a loop")]
    DegeneratePair(usize, usize),

    #[error("weight {weight} exceeds the multiplicity cap {cap}")]
    WeightExceedsCap { weight: u32, cap: u32 },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
