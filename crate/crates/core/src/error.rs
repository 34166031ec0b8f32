use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("uniformity must be at least 2, got {0}")]
    Uniformity(usize),

    #[error("prefix length p = {p} outside [1, {max}]")]
    PrefixLength { p: usize, max: usize },

    #[error("set size {size} outside [1, {max}]")]
    SetSize { size: usize, max: usize },

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid edge {edge:?}: {reason}")]
    InvalidEdge {
        edge: Vec<usize>,
        reason: &'static str,
    },

    #[error("requested {requested} edges but only {available} r-subsets exist")]
    TooManyEdges { requested: u128, available: u128 },

    #[error("enumeration needs {required} items, cap is {cap}")]
    CapExceeded { required: String, cap: u64 },

    #[error("{0}")]
    Unsupported(String),

    #[error("orientation does not match hypergraph: {0}")]
    Mismatch(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("cover does not contain vertex {0}")]
    NotACover(usize),

    #[error("coloring is not proper: edge {0:?} is monochromatic")]
    ImproperColoring(Vec<usize>),

    #[error("coloring has {got} entries, expected {expected}")]
    ColoringLength { got: usize, expected: usize },

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
