use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a configuration needs at least two lines, got {0}")]
    TooFew(usize),
    #[error("lines {0} and {1} are parallel or intersect")]
    DegenerateLines(usize, usize),
    #[error("directions of lines {0}, {1}, {2} are coplanar")]
    CoplanarTriple(usize, usize, usize),
    #[error("line count mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid sign matrix: {0}")]
    InvalidSignMatrix(String),
    #[error("invalid direction tensor: {0}")]
    InvalidTensor(String),
    #[error("ring matrix entry ({0}, {1}) is not an integer")]
    NonIntegerEntry(usize, usize),
    #[error("ring matrix row {0} sum is not divisible by 3")]
    NotDivisibleBy3(usize),
    #[error("matrix is singular{}", .0.map(|c| format!(" (component {c})")).unwrap_or_default())]
    SingularMatrix(Option<usize>),
    #[error("commutator trace vanishes at ({0}, {1}, {2})")]
    ZeroTrace(usize, usize, usize),
    #[error("projection is degenerate: {0}")]
    DegenerateProjection(String),
    #[error("projection point is degenerate: {0}")]
    DegeneratePoint(String),
    #[error("projection bundle is inconsistent: {0}")]
    InconsistentBundle(String),
    #[error("component {0} of the direction tensor is not switch-equivalent to a transitive tournament")]
    NotTriangularizable(usize),
    #[error("projection orders are not realizable: {0}")]
    NotRealizable(String),
    #[error("diagram has {0} crossings, above the budget of {1}")]
    TooManyCrossings(usize, usize),
    #[error("polynomial evaluated at zero")]
    ZeroBase,
    #[error("random sampling exhausted {0} retries")]
    RetriesExhausted(usize),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
