use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed graph document: {0}")]
    Document(String),

    #[error("invalid vertex identifier {0:?}")]
    InvalidVertexId(String),

    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),

    #[error("duplicate edge {0:?} -- {1:?}")]
    DuplicateEdge(String, String),

    #[error("interior vertex {0:?} listed more than once")]
    DuplicateInterior(String),

    #[error("interior vertex {0:?} does not appear in the edge list")]
    InteriorNotInEdges(String),

    #[error("interior set is empty")]
    EmptyInterior,

    #[error("induced subgraph on the interior is disconnected ({0} components)")]
    Disconnected(usize),

    #[error("boundary is empty; Dirichlet problem needs at least one boundary vertex")]
    EmptyBoundary,

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),

    #[error("vertices {0:?} and {1:?} are not adjacent")]
    NotAdjacent(String, String),

    #[error("vertex {0:?} is on the boundary; the Laplacian acts on interior vertices only")]
    BoundaryVertex(String),

    #[error("function has {got} values, domain closure has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("function is not defined on this domain")]
    DomainMismatch,

    #[error("function violates the Dirichlet condition at boundary vertex {0:?}")]
    NotDirichlet(String),

    #[error("eigenmode index {index} out of range for {len} modes")]
    ModeOutOfRange { index: usize, len: usize },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:e})")]
    EigenNotConverged { sweeps: usize, off_diagonal: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "Picard iteration failed on sub-interval starting at t = {t0} (length {tau}) after {iterations} iterations; last contraction ratio {last_ratio:e}"
    )]
    PicardNotConverged {
        t0: f64,
        tau: f64,
        iterations: usize,
        last_ratio: f64,
    },

    #[error("ground-state descent did not converge within {iterations} iterations (Euler-Lagrange residual {el_residual:e})")]
    GroundStateNotConverged { iterations: usize, el_residual: f64 },
}
