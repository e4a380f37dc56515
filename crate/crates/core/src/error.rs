use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown arc `{0}`")]
    UnknownArc(String),
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("duplicate arc `{0}`")]
    DuplicateArc(String),
    #[error("unknown label index `{0}`")]
    UnknownIndex(String),
    #[error("unknown embedding `{0}`")]
    UnknownEmbedding(String),
    #[error("arc label a{label} exceeds dimension {dimension}")]
    LabelOutOfRange { label: u8, dimension: u8 },
    #[error("invalid orbit type: {0}")]
    OrbitType(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("incompatible labels on {item} at index `{index}`")]
    LabelConflict { item: String, index: String },
    #[error("morphism is not injective: {0}")]
    NotInjective(String),
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("kernel is not a subgraph: {0}")]
    NotSubgraph(String),
    #[error("rule violates the label conditions:\n{0}")]
    InvalidRule(Report),
    #[error("match violates the dangling condition:\n{0}")]
    Dangling(Report),
    #[error("node `{node}` has {count} arcs labelled a{label}")]
    Link { node: String, label: u8, count: usize },
    #[error("node `{node}` has no `{embedding}` label")]
    UndefinedLabel { node: String, embedding: String },
    #[error("sort error: {0}")]
    Sort(String),
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("saturation gives node `{node}` two `{embedding}` values: {first} and {second}")]
    SaturationConflict {
        node: String,
        embedding: String,
        first: String,
        second: String,
    },
    #[error("{0}")]
    Unsupported(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
