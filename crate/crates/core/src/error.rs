use thiserror::Error;

/// Errors produced by graph construction, padding, spectral analysis and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("zero weight on edge ({0}, {1})")]
    ZeroWeight(usize, usize),
    #[error("cycle detected through vertices {0:?}")]
    CycleDetected(Vec<usize>),
    #[error("graph is not a connected DAG (no Hamiltonian path)")]
    NotConnected,
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not diagonalizable (min eigenvalue gap {min_gap:e}, eigenvector condition {cond:e}); try a larger pad size")]
    NotDiagonalizable { min_gap: f64, cond: f64 },
    #[error("QR iteration failed to converge after {0} iterations")]
    NoConvergence(usize),
    #[error("spectrum is degenerate: all eigenvalues are zero")]
    DegenerateSpectrum,
    #[error("matrix entry at ({row}, {col}) is not exactly representable")]
    NonExactEntries { row: usize, col: usize },
    #[error("filter order {order} exceeds pad size {pad}")]
    OrderExceedsPadding { order: usize, pad: usize },
    #[error("filter needs at least one coefficient")]
    EmptyFilter,
    #[error("census for n={n} exceeds the budget (n <= {max_n})")]
    TooLarge { n: usize, max_n: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotDiagonalizable { .. }
            | Error::NoConvergence(_)
            | Error::DegenerateSpectrum => 2,
            Error::TooLarge { .. } => 3,
            _ => 1,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
