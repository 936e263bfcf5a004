use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex id {id} out of range in pair ({u}, {v}) for a graph of order {n}")]
    VertexOutOfRange { u: usize, v: usize, id: usize, n: usize },

    #[error("self-loop at vertex {0} in pair ({0}, {0})")]
    SelfLoop(usize),

    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),

    #[error("invalid two-coloring: {0}")]
    InvalidPartition(String),

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("degenerate side sizes n = {n}, k = {k}: need 1 <= k <= n - 1")]
    Degenerate { n: usize, k: usize },

    #[error("clique size k = {k} exceeds n / 2 for n = {n}; swap the sides (use k = {mirror})", mirror = .n - .k)]
    AlphaAboveHalf { n: usize, k: usize },

    #[error("alpha = {0} outside (0, 1/2]")]
    AlphaOutOfRange(f64),

    #[error("invalid hyperbola parameters: {0}")]
    InvalidHyperbola(String),

    #[error("invalid split specification: {0}")]
    InvalidSplit(String),

    #[error("cross-edge count m = {m} outside [0, {max}]")]
    EdgeCountOutOfRange { m: usize, max: usize },

    #[error("sequence is not nonincreasing")]
    NotSorted,

    #[error("vertices {0} and {1} are not both in the clique")]
    NotInClique(usize, usize),

    #[error("search space of 2^{bits} patterns exceeds the capacity guard of 2^{limit}; pass --force to override")]
    Capacity { bits: usize, limit: usize },

    #[error("infeasible degree profile: {0}")]
    InfeasibleProfile(String),

    #[error("malformed linear program: {0}")]
    MalformedLp(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}
