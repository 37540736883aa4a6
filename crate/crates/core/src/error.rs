use thiserror::Error;

/// A failed identity or membership check: the offending basis indices and a
/// short description of what went wrong there.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub detail: String,
}

impl Witness {
    pub fn new(indices: impl Into<Vec<usize>>, detail: impl Into<String>) -> Self {
        Witness { indices: indices.into(), detail: detail.into() }
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}: {}", self.indices, self.detail)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("product entry ({i}, {j}) -> {k} violates the grading: {detail}")]
    Inhomogeneous { i: usize, j: usize, k: usize, detail: String },
    #[error("duplicate product entry ({i}, {j}) -> {k}")]
    DuplicateEntry { i: usize, j: usize, k: usize },
    #[error("{0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("identity check failed: {0}")]
    CheckFailed(Witness),
    #[error("not an ideal: {0}")]
    NotAnIdeal(Witness),
    #[error("not closed under the product: {0}")]
    NotClosed(Witness),
    #[error("not 3-graded: {0}")]
    NotThreeGraded(String),
    #[error("requires a unital Jordan superalgebra: {0}")]
    NotUnital(String),
    #[error("invalid derivation container: {0}")]
    InvalidContainer(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Outcome of an exhaustive identity scan: `Err` carries the first
/// (lexicographically smallest) failing basis tuple.
pub type CheckResult = std::result::Result<(), Witness>;
