use thiserror::Error;

/// Elements and pairs in error messages are 1-based, matching the file format.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("line {line}: index {index} out of range 1..={n}")]
    IndexOutOfRange { line: usize, index: usize, n: usize },

    #[error("line {line}: duplicate mapping for pair ({}, {})", .pair.0 + 1, .pair.1 + 1)]
    DuplicateMapping { line: usize, pair: (usize, usize) },

    #[error("map is not a bijection: output pair ({}, {}) is hit more than once", .pair.0 + 1, .pair.1 + 1)]
    NotBijective { pair: (usize, usize) },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("L_{} does not fix {}; a square-free map needs L_x(x) = x", .0 + 1, .0 + 1)]
    NotSquareFree(usize),

    #[error("{side} component of r is not bijective at {}", .element + 1)]
    Degenerate { side: &'static str, element: usize },

    #[error("{what} exceeds the configured bound {bound}")]
    BoundExceeded { what: String, bound: u64 },

    #[error("subset is not r-invariant")]
    NotInvariant,

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("contract violation: {0}")]
    Contract(String),

    /// A check that follows from a theorem about square-free solutions failed.
    #[error("falsification: {0}")]
    Falsification(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
