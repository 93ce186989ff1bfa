use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid knot vector: {0}")]
    InvalidKnots(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parameter {0} lies outside [0, 1]")]
    OutOfDomain(f64),

    #[error("derivative order {order} exceeds degree {degree}")]
    DerivativeOrder { order: usize, degree: usize },

    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("nonpositive weight {weight} at index {index}")]
    NonPositiveWeight { index: usize, weight: f64 },

    #[error("unsupported degree {degree} for {what}")]
    UnsupportedDegree { degree: usize, what: &'static str },

    #[error("{scheme} needs an even number of elements on periodic spaces, got {n_el}")]
    OddPeriodicElements { scheme: &'static str, n_el: usize },

    #[error("{points} collocation points cannot determine {unknowns} unknowns")]
    TooFewPoints { points: usize, unknowns: usize },

    #[error("{equations} equations for {unknowns} unknowns in a square scheme")]
    CountMismatch { equations: usize, unknowns: usize },

    #[error("averaging groups are not supported here")]
    AveragingNotSupported,

    #[error("boundary condition does not match the spline space kind")]
    BoundaryMismatch,

    #[error("singular Jacobian (det = {det:e}) at ({xi}, {eta})")]
    SingularJacobian { xi: f64, eta: f64, det: f64 },

    #[error("numerically singular matrix: pivot {pivot:e} at row {row}, column {col}")]
    SingularMatrix { row: usize, col: usize, pivot: f64 },

    #[error("unknown problem '{0}'")]
    UnknownProblem(String),

    #[error("invalid study configuration: {0}")]
    Config(String),

    #[error("at n_el = {n_el}: {source}")]
    AtLevel { n_el: usize, source: Box<Error> },
}

impl Error {
    /// True for errors caused by the caller's choice of inputs rather than by
    /// a numerical breakdown.
    pub fn is_config(&self) -> bool {
        match self {
            Error::SingularJacobian { .. } | Error::SingularMatrix { .. } => false,
            Error::AtLevel { source, .. } => source.is_config(),
            _ => true,
        }
    }
}
