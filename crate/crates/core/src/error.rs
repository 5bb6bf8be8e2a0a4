use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("duplicate node id `{0}` in attribute table")]
    DuplicateNodeId(String),

    #[error("node `{0}` appears in the edge list but has no attribute record")]
    MissingAttributes(String),

    #[error("unknown attribute `{name}` (declared: {})", declared.join(", "))]
    UnknownAttribute { name: String, declared: Vec<String> },

    #[error("unknown column `{name}` (available: {})", available.join(", "))]
    UnknownColumn { name: String, available: Vec<String> },

    #[error("node index {index} out of range for graph with {len} nodes")]
    UnknownNode { index: usize, len: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("node {0} has no neighbors")]
    IsolatedNode(usize),

    #[error(
        "quintet generation gave up after {attempts} attempts ({}, required |r| <= {max_abs_r})",
        describe_best(.best_abs_r)
    )]
    GenerationFailed {
        attempts: usize,
        best_abs_r: Option<f64>,
        max_abs_r: f64,
    },

    #[error("malformed score file: {0}")]
    ScoreFormat(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

fn describe_best(best: &Option<f64>) -> String {
    match best {
        Some(r) => format!("best achieved |r| = {r:.6}"),
        None => "no attempt produced a connected simple graph".to_string(),
    }
}
