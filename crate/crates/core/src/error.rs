use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group closure exceeded {cap} elements; generators are not of finite small order")]
    ClosureOverflow { cap: usize },

    #[error("matrix is not positive definite: leading minor {index} is {minor}")]
    NotPositiveDefinite { index: usize, minor: String },

    #[error("cross-ratio needs four distinct points, got {0}")]
    DegenerateQuadruple(String),

    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),

    #[error("argument out of domain: {0}")]
    OutOfDomain(String),

    #[error("not a closed surface: edge {edge:?} has {degree} incident faces")]
    NotClosedSurface { edge: (i64, i64), degree: usize },

    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),

    #[error("gamma has a pole at non-positive integer {0}")]
    PoleAtNonPositiveInteger(f64),

    #[error("beta function pole: alpha_{index} = {value} is a non-positive integer")]
    PoleDetected { index: usize, value: String },

    #[error("outside the convergence region: {0}")]
    DomainError(String),

    #[error("point lies on the branch locus {0}")]
    BranchLocus(&'static str),

    #[error("input is not a unit vector (norm {0})")]
    NotUnit(f64),

    #[error("bad projection axes: {0}")]
    BadAxes(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
