use thiserror::Error;

use crate::generators::LemmaVerdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    InvalidEdge(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} is outside 0..{1}")]
    InvalidVertex(usize, usize),
    #[error("the two vertices must differ (got {0} twice)")]
    SameVertex(usize),
    #[error("a graph needs at least one vertex")]
    EmptyGraph,
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("pairwise quantities need at least two vertices (n = {0})")]
    TooSmall(usize),
    #[error("graph has strong index {achieved}, below the requested index {required}")]
    NotRStrong { achieved: usize, required: usize },
    #[error("exhaustive search limited to n <= {cap}, graph has {n} vertices")]
    TooLargeForExact { n: usize, cap: usize },
    #[error("index r must be at least 1")]
    ZeroIndex,
    #[error("index r and slack d must both be at least 1 (got r = {r}, d = {d})")]
    InvalidParams { r: usize, d: usize },
    #[error("maximum degree must be at least 2 (got {0})")]
    DegreeTooSmall(usize),
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("epsilon {0} is outside (0, 1/2]")]
    InvalidEpsilon(f64),
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("edge probability max(16 ln n, 4y)/(n-1) = {p} exceeds 1 for n = {n}, y = {y}")]
    InfeasibleP { n: usize, y: usize, p: f64 },
    #[error("no passing graph after {} attempts{}", .verdict.attempts_used, block_suffix(.block))]
    GenerationFailed {
        block: Option<usize>,
        verdict: Box<LemmaVerdict>,
    },
    #[error("assembled graph failed re-verification: {0}")]
    ChainVerification(String),
}

fn block_suffix(block: &Option<usize>) -> String {
    match block {
        Some(b) => format!(" in block {b}"),
        None => String::new(),
    }
}
