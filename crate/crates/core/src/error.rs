use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },

    #[error("line {line}: vertex {id} out of range 1..={n}")]
    VertexOutOfRange { line: usize, id: usize, n: usize },

    #[error("line {line}: unknown color '{letter}' (expected g, b or w)")]
    UnknownColor { line: usize, letter: String },

    #[error("line {line}: self-loop on vertex {v}")]
    SelfLoop { line: usize, v: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("edge {{{0}, {1}}} is not present")]
    MissingEdge(usize, usize),

    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("instance has {n} vertices but the engine is capped at {max}")]
    Capacity { n: usize, max: usize },

    #[error("vertex budget exceeded: {needed} vertices requested, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: usize },

    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex set is not a vertex cover: edge {{{0}, {1}}} is uncovered")]
    NotACover(usize, usize),

    #[error("invalid module partition: {0}")]
    InvalidPartition(String),

    #[error("graph is not a forest")]
    NotAForest,

    #[error("graph is not a tree")]
    NotATree,

    #[error("edge {{{0}, {1}}} is not gray; impartial analysis needs an all-gray position")]
    NotImpartial(usize, usize),

    #[error("suite: {0}")]
    Suite(String),

    #[error("winner mismatch on {instance}: {details}")]
    Inconsistent { instance: String, details: String },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
