use thiserror::Error;

/// Where a non-finite objective value was observed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    /// Base point of an iteration.
    Base,
    /// Finite-difference probe along the `l`-th basis vector.
    Direction(usize),
    /// Trial point of the sufficient-decrease test.
    Trial,
}

impl std::fmt::Display for Probe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Probe::Base => write!(f, "base point"),
            Probe::Direction(l) => write!(f, "finite-difference probe {l}"),
            Probe::Trial => write!(f, "trial point"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),
    #[error("objective returned a non-finite value at the {probe} (iteration {iteration})")]
    NonFiniteObjective { probe: Probe, iteration: usize },
    #[error("point is not on {manifold}: constraint residual {residual:e}")]
    Infeasible { manifold: String, residual: f64 },
    #[error("tangent basis was built at a different base point")]
    BaseMismatch,
    #[error("could not build {needed} orthonormal tangent vectors ({found} found, {redraws} redraws)")]
    DegenerateBasis {
        needed: usize,
        found: usize,
        redraws: usize,
    },
    #[error("the extrinsic scheme needs an objective that can be evaluated off the manifold")]
    NotExtrinsic,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("performance profile needs at least one problem")]
    EmptyProblemSet,
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
