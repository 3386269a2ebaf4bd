use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The combinatorial data is inconsistent (non-planar rotation data,
    /// non-terminating trip, inconsistent face labels, ...).
    #[error("structural error: {0}")]
    Structural(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// No J-flow exists; the subset lies outside the positroid.
    #[error("no flow exists for subset {0:?}")]
    NoFlow(Vec<usize>),

    /// A weight vector violates the four-point condition.
    #[error("weight vector is not in the tropical Grassmannian: minimum pair-sum attained once on quadruple {0:?}")]
    NotTropical([usize; 4]),

    /// A reduced basis has a generator with three or more terms, so the
    /// monomial-freeness shortcut does not apply.
    #[error("unsupported basis shape: {0}")]
    UnsupportedShape(String),

    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
