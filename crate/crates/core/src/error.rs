use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad classification used for exit codes and HTTP status mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input violated a precondition.
    Validation,
    /// The input was acceptable but the computation failed.
    Computation,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("empty")]
    Infeasible,
    #[error("not pointed")]
    NotPointed,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph needs more than {k} nodes, has {nodes}")]
    TooFewNodes { k: usize, nodes: usize },
    #[error("not a facet: {0}")]
    NotAFacet(usize),
    #[error("no such facet")]
    NoSuchFacet,
    #[error("ambiguous facet: {count} facets contain the marked vertices")]
    AmbiguousFacet { count: usize },
    #[error("invalid viewpoint")]
    InvalidViewpoint,
    #[error("displacement is not parallel to the projection facet")]
    NotParallel,
    #[error("vertex {0} lies on the projection facet")]
    VertexOnFacet(usize),
    #[error("line through vertex and target does not meet the viewpoint hyperplane")]
    ParallelLine,
    #[error("singular configuration: nodes {a} and {b} coincide{}", iteration.map(|i| format!(" at iteration {i}")).unwrap_or_default())]
    SingularConfiguration { a: usize, b: usize, iteration: Option<usize> },
    #[error("spring iteration diverged at iteration {0}")]
    Diverged(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not planar")]
    NotPlanar,
    #[error("graph is not 3-connected")]
    NotThreeConnected,
    #[error("stress is not in equilibrium (residual {0:e})")]
    NotInEquilibrium(f64),
    #[error("linear system is singular")]
    SingularSystem,
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("projection has dimension {0}; use the combinatorial visualization instead")]
    ProjectionTooLarge(usize),
    #[error("edge {0}-{1} has zero length")]
    ZeroLengthEdge(usize, usize),
    #[error("unknown node {0}")]
    UnknownNode(usize),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::SingularConfiguration { .. }
            | Error::Diverged(_)
            | Error::NotInEquilibrium(_)
            | Error::SingularSystem => ErrorKind::Computation,
            _ => ErrorKind::Validation,
        }
    }

    /// Short machine-readable tag, stable across versions.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyInput => "empty_input",
            Error::Infeasible => "empty",
            Error::NotPointed => "not_pointed",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::TooFewNodes { .. } => "too_few_nodes",
            Error::NotAFacet(_) => "not_a_facet",
            Error::NoSuchFacet => "no_such_facet",
            Error::AmbiguousFacet { .. } => "ambiguous",
            Error::InvalidViewpoint => "invalid_viewpoint",
            Error::NotParallel => "not_parallel",
            Error::VertexOnFacet(_) => "vertex_on_facet",
            Error::ParallelLine => "parallel_line",
            Error::SingularConfiguration { .. } => "singular_configuration",
            Error::Diverged(_) => "diverged",
            Error::Disconnected => "disconnected",
            Error::NotPlanar => "not_planar",
            Error::NotThreeConnected => "not_3_connected",
            Error::NotInEquilibrium(_) => "not_in_equilibrium",
            Error::SingularSystem => "singular_system",
            Error::InvalidMetric(_) => "invalid_metric",
            Error::ProjectionTooLarge(_) => "projection_too_large",
            Error::ZeroLengthEdge(..) => "zero_length_edge",
            Error::UnknownNode(_) => "unknown_node",
            Error::Malformed(_) => "malformed",
            Error::Parse(_) => "parse",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
