use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// Gamma or a hypergeometric denominator hit a non-positive integer.
    #[error("pole at {0}")]
    Pole(String),

    #[error("series diverges: |z| = {0} >= 1 and the series does not terminate")]
    Divergent(f64),

    #[error("series failed to converge within {0} terms")]
    ConvergenceFailure(usize),

    #[error("no upper parameter terminates the series")]
    NotTerminating,

    #[error("quadrature tolerance not met: estimated error {error:e} after reaching depth {depth}")]
    ToleranceNotMet { error: f64, depth: u32 },

    /// The two points of a Green's function evaluation coincide.
    #[error("source and field points coincide")]
    CoincidentPoints,

    #[error("unsupported hypergeometric parameters: {0}")]
    Unsupported(String),

    /// Every contiguous-relation path to the anchor hits a vanishing pivot.
    #[error("degenerate contiguous relation: {0}")]
    Degenerate(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
