use num_complex::Complex64;
use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum HomqError {
    #[error("edge {edge} is a self-loop on vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },

    #[error("edge {edge} duplicates the pair ({u}, {v})")]
    ParallelEdge { edge: usize, u: usize, v: usize },

    #[error("edge {edge} references vertex {vertex}, but the graph has {vertex_count} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        vertex_count: usize,
    },

    #[error("vertex subset is empty")]
    EmptySubset,

    #[error("vertex subset does not induce a connected subgraph")]
    SubsetNotConnected,

    #[error("instance too large: {reason}")]
    InstanceTooLarge { reason: String },

    #[error("evaluation ratio {ratio} must lie strictly inside (0, 1)")]
    RatioOutOfRange { ratio: f64 },

    #[error("polynomial is not normalized: a_0 = {a0}, expected 1")]
    NotNormalized { a0: Complex64 },

    #[error(
        "instance lies outside the certified zero-free region \
         (margin {margin}, threshold {threshold})"
    )]
    OutsideZeroFreeRegion { margin: f64, threshold: f64 },

    #[error("X-program row {row} has Hamming weight {weight}; only weights 1 and 2 are supported")]
    RowWeightUnsupported { row: usize, weight: usize },

    #[error("X-program repeats the edge ({u}, {v})")]
    DuplicateEdgeRow { u: usize, v: usize },

    #[error("angle {angle} lies outside [-pi, pi]")]
    AngleOutOfRange { angle: f64 },

    #[error("delta {delta} must lie in (0, 2]")]
    DeltaOutOfRange { delta: f64 },

    #[error("pin index {k} must lie in [1, {m}]")]
    PinIndexOutOfRange { k: usize, m: usize },

    #[error("epsilon {epsilon} must lie strictly inside (0, 1)")]
    EpsilonOutOfRange { epsilon: f64 },

    #[error("matrix for edge {edge} is not symmetric at entry ({row}, {col})")]
    MatrixNotSymmetric { edge: usize, row: usize, col: usize },

    #[error("expected {expected} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid instance file: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, HomqError>;
