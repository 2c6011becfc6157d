use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational {0:?}: expected \"a\", \"-a\" or \"a/b\" with b > 0")]
    BadRational(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("degenerate nodes: abscissa {0} appears more than once")]
    DegenerateNodes(String),

    #[error("insufficient nodes: need {needed}, got {got}")]
    InsufficientNodes { needed: usize, got: usize },

    #[error("inconsistent nodes: point ({0}) does not lie on the interpolant")]
    InconsistentNodes(String),

    #[error("unknown edge {0}")]
    UnknownEdge(usize),

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("unknown matroid element {0}")]
    UnknownElement(usize),

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("NP point, instance too large: search exceeded {0} nodes")]
    NpInstanceTooLarge(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("non-implementing gadget: Z_s|t vanishes")]
    NonImplementing,

    #[error("singular series composition: q + w1 + w2 = 0")]
    SingularSeries,

    #[error("diamond undefined at ({x}, {y})")]
    DiamondUndefined { x: String, y: String },

    #[error("iteration cap {cap} exceeded; last point ({x}, {y})")]
    IterationCap { cap: usize, x: String, y: String },

    #[error("{construction}: hypothesis fails: {failed}")]
    Hypothesis {
        construction: &'static str,
        failed: String,
    },

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("terminals {s} and {t} are not connected")]
    Disconnected { s: usize, t: usize },

    #[error("interval endpoints violate the expected sign pattern: {0}")]
    OracleInconsistent(String),

    #[error("cut recovery failed: {0}")]
    Recovery(String),
}

pub type Result<T> = std::result::Result<T, Error>;
