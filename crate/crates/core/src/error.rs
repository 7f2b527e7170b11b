use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a graph needs at least one vertex")]
    EmptyGraph,
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge id {0} out of range")]
    BadEdgeId(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge set is not a matching")]
    NotAMatching,
    #[error("edge {0} is not a chord of the spanning tree")]
    NotAChord(usize),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("arc sequence is not a closed walk")]
    NotClosed,
    #[error("magnetic graphs have different underlying graphs")]
    GraphMismatch,
    #[error("eigensolver failed: {0}")]
    EigenSolverFailure(String),
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("shift {r} invalid for spectra of length {n}")]
    BadShift { r: usize, n: usize },
    #[error("exhaustive search on {n} vertices exceeded its budget; result unknown")]
    TooLarge { n: usize },
    #[error("sweep needs {points} spectra, budget is {budget}")]
    BudgetExceeded { points: u128, budget: usize },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("soundness violation: {0}")]
    SoundnessViolation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
