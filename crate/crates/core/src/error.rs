//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SaxlError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("not a bijection on 1..{degree}: point {point} {problem}")]
    NotBijective {
        degree: usize,
        point: usize,
        problem: String,
    },

    #[error("label cap exceeded: more than {cap} labels in {context}")]
    CapExceeded { cap: usize, context: String },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("group is intransitive on the given space")]
    Intransitive,

    #[error("stabiliser mismatch: {0}")]
    StabiliserMismatch(String),

    #[error("non-triangular incidence matrix at ({0}, {1})")]
    NotTriangular(usize, usize),

    #[error("inconsistent result: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("element search failed: {0}")]
    SearchFailed(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
