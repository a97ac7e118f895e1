use crate::graph::VertexId;

/// Errors shared across the library.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid part sizes: {0}")]
    InvalidPartSizes(String),

    #[error("unknown vertex {0} (part out of range or index exceeds part size)")]
    UnknownVertex(VertexId),

    #[error("part indices must differ, got part {0} twice")]
    SamePart(usize),

    #[error("partiteness violated: {0}")]
    Partiteness(String),

    #[error("invalid union alignment: {0}")]
    Alignment(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("not a transversal: {0}")]
    NotTransversal(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("host shape outside check regime: {0}")]
    Regime(String),

    #[error("enumeration budget exceeded: {0} transversals (cap {1})")]
    EnumerationBudget(u128, u64),

    #[error("search budget exhausted: proved {lower} <= max <= {upper} after {nodes} nodes")]
    SearchBudget {
        /// Best feasible edge count found before the abort.
        lower: u64,
        /// Largest edge count any unexplored branch could still reach.
        upper: u64,
        nodes: u64,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
