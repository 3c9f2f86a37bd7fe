use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("window shift is not exact and an interval straddles a facet plane")]
    ApproximateShift,
    #[error("window has empty interior")]
    EmptyWindowInterior,
    #[error("no module point with star image in the window interior within search radius")]
    NoInteriorPoint,
    #[error("vector does not lie in the plane {0}")]
    NotInPlane(&'static str),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("switching pair could not be embedded: {0}")]
    EmbeddingFailed(String),
    #[error("convex hull touches the boundary of the enumerated region")]
    HullTouchesPatchBoundary,
    #[error("directions are not both parallel to the slicing plane")]
    NotCoplanarDirections,
    #[error("x-ray totals differ ({0} vs {1})")]
    UnequalTotals(usize, usize),
    #[error("instance is infeasible")]
    Infeasible,
    #[error("candidate set too large for brute force ({0} > {1})")]
    TooLarge(usize, usize),
    #[error("empty patch")]
    EmptyPatch,
    #[error("invalid direction: {0}")]
    InvalidDirection(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
