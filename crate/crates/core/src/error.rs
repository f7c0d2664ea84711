use thiserror::Error;

/// Errors raised by constructions, foliations and verification runs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("curves coincide as point sets")]
    CoincidentCurves,
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("polynomial is identically zero")]
    IdenticallyZero,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("no real solution")]
    NoRealSolution,
    #[error("no real tangent line from the point")]
    NoRealTangent,
    #[error("left/right tangent order is ambiguous")]
    AmbiguousOrder,
    #[error("conic has no center")]
    NotCentralConic,
    #[error("point is not a focus of the conic")]
    NotAFocus,
    #[error("angle {0} is outside the admissible interval")]
    AngleOutOfRange(f64),
    #[error("quadratic has a double root")]
    DegenerateRoots,
    #[error("point is outside the domain")]
    OutsideDomain,
    #[error("eccentricity {0} differs from 1/sqrt(2)")]
    WrongEccentricity(f64),
    #[error("base circles coincide")]
    CoincidentCircles,
    #[error("point is a vertex of the pencil")]
    AtVertex,
    #[error("point is a limiting point of the pencil")]
    AtLimitingPoint,
    #[error("tangency branch could not be tracked")]
    BranchJump,
    #[error("projection ray misses the sphere")]
    MissesSphere,
    #[error("projection lands at infinity")]
    ProjectsToInfinity,
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("closure step {0} failed")]
    StepFailed(usize),
    #[error("closure step {0} has two comparably close intersection candidates")]
    BranchAmbiguous(usize),
    #[error("only {succeeded} of {attempted} traces succeeded")]
    InsufficientValidTraces { attempted: usize, succeeded: usize },
    #[error("chart is not aligned with the web")]
    MisalignedChart,
    #[error("perpendicular foot is degenerate")]
    DegenerateFoot,
    #[error("io error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
