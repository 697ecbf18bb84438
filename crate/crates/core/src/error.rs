use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped by the stage that raises them so the CLI can map
/// them onto exit codes without string matching.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("label out of range {0}")]
    LabelOutOfRange(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("unknown endpoint {0}")]
    UnknownEndpoint(String),
    #[error("self-loop rejected at {0}")]
    SelfLoop(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("invalid vertex name {0:?}")]
    InvalidName(String),

    #[error("graph is not chordal: {v} has later neighbors {u} and {w} which are not adjacent")]
    NotChordal { v: String, u: String, w: String },
    #[error("not a lefthanded tree-order: {0}")]
    NotLefthanded(String),
    #[error("successor map has a cycle through {0}")]
    CyclicOrder(String),

    #[error("oracle size cap exceeded: {n} vertices, cap {cap}")]
    OracleCapExceeded { n: usize, cap: usize },
    #[error("degenerate: σ(∅)=0 (B(D_{0}) vanishes)")]
    DegenerateAssignment(String),
    #[error("internal identity violated: {0}")]
    IdentityViolated(String),

    #[error("zero polynomial has no primitive part")]
    ZeroPolynomial,
    #[error("root at interval endpoint")]
    RootAtEndpoint,
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("empty interval: lo must be < hi")]
    EmptyInterval,
    #[error("degenerate recursion at {0}")]
    DegenerateRecursion(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("no constraint polynomial changes sign in (0, 1]")]
    NoCriticalRoot,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
