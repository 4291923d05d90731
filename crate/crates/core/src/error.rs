use thiserror::Error;

use crate::format::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("point or region belongs to a different space")]
    SpaceMismatch,
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported metric: {0}")]
    UnsupportedMetric(String),
    #[error("region too thin to sample: acceptance rate {rate:e} below 1e-4")]
    SamplingFailed { rate: f64 },
    #[error("empty conjunction: `{left}` and `{right}` have no common instances")]
    EmptyConjunction { left: String, right: String },
    #[error("value {0} outside [0, 1]")]
    OutOfUnitRange(f64),
    #[error("unassigned atom {predicate}({individual})")]
    UnassignedAtom { predicate: String, individual: String },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("invalid training input: {0}")]
    InvalidTraining(String),
    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("invalid taxonomy: {0}")]
    InvalidTaxonomy(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
