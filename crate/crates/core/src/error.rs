use thiserror::Error;

/// Everything that can go wrong while building or evaluating a model.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("secular function is only defined for Robin cross-sections")]
    UnsupportedBranch,

    #[error("eigenvalue bracketing failed: {reason}; scan trace: {trace:?}")]
    BracketExhausted {
        reason: String,
        trace: Vec<(f64, f64)>,
    },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("empty support: {0}")]
    EmptySupport(String),

    #[error("expression parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("{} measure nodes lie outside the mesh, first few: {:?}", .0.len(), first_nodes(.0))]
    NodesOutsideMesh(Vec<[f64; 2]>),

    #[error("factorization breakdown at pivot {index} (dimension {dim})")]
    FactorizationBreakdown { index: usize, dim: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn first_nodes(nodes: &[[f64; 2]]) -> &[[f64; 2]] {
    &nodes[..nodes.len().min(8)]
}

pub type Result<T> = std::result::Result<T, Error>;
