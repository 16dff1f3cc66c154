use thiserror::Error;

use crate::graph::Violation;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("graph failed validation: {}", format_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("epsilon subgraph is empty (eps = {eps} exceeds the largest boundary distance)")]
    EmptySubgraph { eps: f64 },

    #[error("inseparable pair: `{0}` and `{1}` are joined by an edge")]
    Inseparable(String, String),

    #[error("vertex cap exceeded: {requested} vertices requested, cap is {cap}")]
    VertexCap { requested: usize, cap: usize },

    #[error("interior system is singular at vertex `{0}` (component without boundary?)")]
    Singular(String),

    #[error("conjugate gradient did not converge: relative residual {residual:e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },

    #[error("cell {0} has no positive mass")]
    ZeroMass(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("no cell matches `{0}`")]
    NoCell(String),

    #[error("overflow at index {index}")]
    Overflow { index: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::UnknownEdge(_) => "unknown_edge",
            Error::Invalid(_) => "invalid_graph",
            Error::Schema(_) => "schema",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::EmptySubgraph { .. } => "empty_subgraph",
            Error::Inseparable(..) => "inseparable",
            Error::VertexCap { .. } => "vertex_cap",
            Error::Singular(_) => "singular",
            Error::NoConvergence { .. } => "no_convergence",
            Error::ZeroMass(_) => "zero_mass",
            Error::Dimension { .. } => "dimension",
            Error::NoCell(_) => "no_cell",
            Error::Overflow { .. } => "overflow",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
            Error::Io(_) => "io",
        }
    }
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
