use thiserror::Error;

/// Errors from matrix arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("undefined product INF * 0 at cell ({row}, {col})")]
    UndefinedProduct { row: usize, col: usize },
    #[error("infinite operand at cell ({row}, {col})")]
    InfiniteOperand { row: usize, col: usize },
    #[error("negative result at cell ({row}, {col})")]
    NegativeResult { row: usize, col: usize },
    #[error("count overflow at cell ({row}, {col})")]
    Overflow { row: usize, col: usize },
    #[error("matrix dimension must be at least 1")]
    Empty,
    #[error("expected {expected} cells, found {found}")]
    CellCount { expected: usize, found: usize },
    #[error("binary matrix cell ({row}, {col}) is not 0 or 1")]
    NotBinary { row: usize, col: usize },
}

/// Errors from graph construction and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: self-loop on node {label:?} is not allowed")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}: duplicate edge {src:?} -> {dst:?}")]
    DuplicateEdge { line: usize, src: String, dst: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("duplicate node label {0:?}")]
    DuplicateLabel(String),
    #[error("edge ({0}, {1}) references a node outside the graph")]
    NodeOutOfRange(usize, usize),
    #[error("graph has no nodes")]
    Empty,
}

/// Errors from trajectory validation and ingestion.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrajectoryError {
    #[error("trajectory has {0} node(s); at least 2 are required")]
    TooShort(usize),
    #[error("trajectory visits node {0:?} more than once")]
    RepeatedNode(String),
    #[error("trajectory uses missing edge {0:?} -> {1:?}")]
    MissingEdge(String, String),
    #[error("trajectory references node index {0} outside the graph")]
    NodeOutOfRange(usize),
    #[error("line {line}: unknown node label {label:?}")]
    UnknownLabel { line: usize, label: String },
    #[error("line {line}: {error}")]
    AtLine { line: usize, error: Box<TrajectoryError> },
}

impl TrajectoryError {
    /// The underlying error with any line context stripped.
    pub fn root(&self) -> &TrajectoryError {
        match self {
            TrajectoryError::AtLine { error, .. } => error.root(),
            other => other,
        }
    }
}

/// Top-level error for bundle construction and auditing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Trajectory(#[from] TrajectoryError),
    #[error("cross-check {identity} failed at cell ({row}, {col}): {lhs} vs {rhs}")]
    CrossCheckFailure {
        identity: String,
        row: usize,
        col: usize,
        lhs: String,
        rhs: String,
    },
    #[error("identity {id}: {error}")]
    Identity { id: String, error: MatrixError },
    #[error("unknown identity id {0:?}")]
    UnknownIdentity(String),
    #[error("invalid generator config: {0}")]
    Config(String),
    #[error("matrix text: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
