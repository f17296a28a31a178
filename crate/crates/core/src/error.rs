use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point ({re}, {im}) is not strictly inside the unit disk")]
    NotInterior { re: f64, im: f64 },
    #[error("ideal endpoints coincide; a geodesic needs two distinct endpoints")]
    DegenerateGeodesic,
    #[error("points coincide; no unique geodesic through them")]
    CoincidentPoints,
    #[error("isometry is the identity")]
    IdentityTransform,
    #[error("|trace| = {abs_trace} is within tolerance of 2; class is ambiguous")]
    AmbiguousClass { abs_trace: f64 },
    #[error("isometry is not hyperbolic (|trace| = {abs_trace})")]
    NotHyperbolic { abs_trace: f64 },
    #[error("geodesics are identical")]
    IdenticalGeodesics,
    #[error("geodesics share an ideal endpoint; asymptotic pair cannot be resolved")]
    TangentUnresolved,
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: i32, rank: u32 },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: u32, got: u32 },
    #[error("cannot parse word: {0}")]
    WordSyntax(String),
    #[error("the identity element has no axis")]
    IdentityElement,
    #[error("window {window} is smaller than the required {required}")]
    WindowTooSmall { window: usize, required: usize },
    #[error("invalid surface: {0}")]
    InvalidPreset(String),
    #[error("ping-pong certificate failed: {0}")]
    PingPongFailed(String),
    #[error("class is not hyperbolic (|trace| = {abs_trace}); it does not represent a closed geodesic")]
    NotHyperbolicClass { abs_trace: f64 },
    #[error("radius {radius} is insufficient; at least {required} needed")]
    RadiusInsufficient { radius: usize, required: usize },
    #[error("point lies on a wall translate")]
    OnWall,
    #[error("point location did not terminate within {0} steps")]
    MaxStepsExceeded(usize),
    #[error("need at least {required} sample pairs, got {got}")]
    SampleTooSmall { required: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code for reports and CLI output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotInterior { .. } => "NotInterior",
            Error::DegenerateGeodesic => "DegenerateGeodesic",
            Error::CoincidentPoints => "CoincidentPoints",
            Error::IdentityTransform => "IdentityTransform",
            Error::AmbiguousClass { .. } => "AmbiguousClass",
            Error::NotHyperbolic { .. } => "NotHyperbolic",
            Error::IdenticalGeodesics => "IdenticalGeodesics",
            Error::TangentUnresolved => "TangentUnresolved",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::RankMismatch { .. } => "RankMismatch",
            Error::WordSyntax(_) => "WordSyntax",
            Error::IdentityElement => "IdentityElement",
            Error::WindowTooSmall { .. } => "WindowTooSmall",
            Error::InvalidPreset(_) => "InvalidPreset",
            Error::PingPongFailed(_) => "PingPongFailed",
            Error::NotHyperbolicClass { .. } => "NotHyperbolicClass",
            Error::RadiusInsufficient { .. } => "RadiusInsufficient",
            Error::OnWall => "OnWall",
            Error::MaxStepsExceeded(_) => "MaxStepsExceeded",
            Error::SampleTooSmall { .. } => "SampleTooSmall",
            Error::Precondition(_) => "Precondition",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
