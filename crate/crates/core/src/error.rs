use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The deformation parameter must lie in the open interval (-1, 1).
    #[error("deformation parameter gamma = {0} outside the open interval (-1, 1)")]
    GammaOutOfDomain(f64),

    #[error("non-invertible transform")]
    NonInvertibleTransform,

    #[error("seed vectors not orthonormal")]
    SeedsNotOrthonormal,

    #[error("unsupported seed")]
    UnsupportedSeed,

    #[error("clifford momenta built on different deformations ({0} vs {1})")]
    MismatchedGamma(f64, f64),

    /// Zero momentum or zero Rashba coefficient collapses the splitting.
    #[error("degenerate splitting")]
    DegenerateSplitting,

    #[error("projector singular")]
    ProjectorSingular,

    #[error("associated-state normalization vanishes")]
    VanishingNormalization,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
