use thiserror::Error;

/// Errors raised by the graph kernel and the object-level theories.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no such edge: {0}")]
    NoSuchEdge(String),

    #[error("no such vertex: {0}")]
    NoSuchVertex(String),

    #[error("duplicate vertex id: {0}")]
    DuplicateVertex(String),

    #[error("duplicate edge id: {0}")]
    DuplicateEdge(String),

    #[error("boundary vertex {0} has degree {1}, expected 1")]
    BoundaryDegree(String, usize),

    #[error("no such box: {0}")]
    NoSuchBox(String),

    #[error("box {0} overlaps another box")]
    OverlappingBoxes(String),

    #[error("merge connectivity violation: boxes {0} and {1} are connected")]
    MergeConnectivity(String, String),

    #[error("plug interface violation: {0}")]
    PlugInterface(String),

    #[error("pattern plug box violation: {0}")]
    PatternPlugBox(String),

    #[error("composition type error: {0}")]
    CompositionType(String),

    #[error("concrete graph error: {0}")]
    Concrete(String),

    #[error("stale witness: {0}")]
    StaleWitness(String),

    #[error("invalid rule: {0}")]
    InvalidRule(String),

    #[error("invalid derivation step: {0}")]
    Derivation(String),

    #[error("label error: {0}")]
    Label(String),

    #[error("rewrite error: {0}")]
    Rewrite(String),

    #[error("semantics error: {0}")]
    Semantics(String),

    #[error("angle parse error: {0}")]
    AngleParse(String),

    #[error("document error at {path}: {message}")]
    Document { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
