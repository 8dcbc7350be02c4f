use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph on {n} vertices exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex sets overlap at vertex {0}")]
    OverlappingSets(usize),

    #[error("vertex set is empty")]
    EmptySet,

    #[error("cannot pair up an odd number ({0}) of elements")]
    OddSet(usize),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("vertex set is not a clique: {0} and {1} are non-adjacent")]
    NotAClique(usize, usize),

    #[error("no partition reached the threshold after {attempts} attempts")]
    SamplingFailure { attempts: u64 },

    #[error("parameter check failed: {0}")]
    Parameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("graph has no matching of size {0}")]
    Infeasible(usize),

    #[error("{0}")]
    Io(String),

    #[error("{context}: {source}")]
    Context { context: String, source: Box<Error> },
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
