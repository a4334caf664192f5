use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph on {n} vertices exceeds the cap of {cap}")]
    TooManyVertices { n: usize, cap: usize },
    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("invalid pattern: {0}")]
    Pattern(String),
    #[error("graph is not P4-free: induced P4 on {0:?}")]
    HasInducedP4(Vec<usize>),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is complete, so it has no induced P3")]
    NoInducedP3,
    #[error("vertex set is not independent: {0} ~ {1}")]
    NotIndependent(usize, usize),
    #[error("graph is not {pattern}-free: induced copy on {embedding:?}")]
    NotFree { pattern: String, embedding: Vec<usize> },
    #[error("chromatic number {chi} is below {k}")]
    ChromaticTooSmall { chi: usize, k: usize },
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
    #[error("critical database is for k={db_k}, expected k={expected}")]
    DbMismatch { db_k: usize, expected: usize },
    #[error("critical database is incomplete: graph is not {k}-colourable but contains no member")]
    DbIncomplete { k: usize },
    #[error("malformed critical database at line {line}: {reason}")]
    DbFormat { line: usize, reason: String },
    #[error("{what} on {n} vertices exceeds the budget of {cap}")]
    OverBudget { what: &'static str, n: usize, cap: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
