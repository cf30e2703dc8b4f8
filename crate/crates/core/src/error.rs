use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("rows have differing lengths")]
    Ragged,
    #[error("entry {0} is not 0 or 1")]
    NotZeroOne(i64),
    #[error("index {0} out of range")]
    Index(usize),
    #[error("{op} needs {need}, got {rows}x{cols}")]
    Dimension {
        op: &'static str,
        need: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error("parameter out of domain: {0}")]
    Domain(String),
}

impl BoundError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        BoundError::Domain(msg.into())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("projective planes are only built for prime orders, got {0}")]
    UnsupportedOrder(u64),
    #[error("invalid construction parameter: {0}")]
    Invalid(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("n = {n} exceeds the search size limit {limit} for class {class}")]
    TooLarge { class: char, n: usize, limit: usize },
    #[error("invalid search parameters: {0}")]
    Invalid(String),
    #[error("search for ({class}, {n}, {k}) did not finish within the node budget")]
    NotExhaustive { class: char, n: usize, k: usize },
    #[error("bound {name} violated: max |det| = {max} but bound is {bound:.6e}")]
    BoundViolated { name: String, max: String, bound: f64 },
    #[error("could not build thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}
