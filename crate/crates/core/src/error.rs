use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not a projector: {reason}")]
    NotProjector { reason: String },

    #[error("invalid quantum state: {reason}")]
    InvalidState { reason: String },

    #[error("matrix contains non-finite entries")]
    NonFiniteEntries,

    #[error("empty span: at least one vector is required")]
    EmptySpan,

    #[error("mode index {mode} out of range for dimension {dim}")]
    ModeOutOfRange { mode: usize, dim: usize },

    #[error("reflectivity {0} outside [0, 1]")]
    InvalidReflectivity(f64),

    #[error("beam splitter requires two distinct modes, got {0}")]
    DuplicateModes(usize),

    #[error("observable has {points} spectral points; subset enumeration capped at {cap}")]
    TooManySpectralPoints { points: usize, cap: usize },

    #[error("detectors {0} and {1} are not orthogonal (joint probability is ill-defined)")]
    NonOrthogonalDetectors(String, String),

    #[error("unknown detector: {0}")]
    UnknownDetector(String),

    #[error("invalid value set: {0}")]
    InvalidValueSet(String),

    #[error("invalid scene: {0}")]
    InvalidScene(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown name: {0}")]
    UnknownName(String),
}

impl Error {
    /// Stable CLI exit code: 2 for input errors, 3 for parse errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
