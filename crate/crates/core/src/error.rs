use thiserror::Error;

use crate::diagram::SegId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a regular projection: {0}")]
    NonRegularProjection(String),
    #[error("no over/under choice for intersecting segments {0:?} and {1:?}")]
    MissingAssignment(SegId, SegId),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("point does not lie in the open segment {0:?}")]
    PointNotOnSegment(SegId),
    #[error("point coincides with a crossing on segment {0:?}")]
    PointOnCrossing(SegId),
    #[error("local pattern for the move is absent: {0}")]
    PatternMismatch(String),
    #[error("the move's disc is obstructed: {0}")]
    ObstructedDisc(String),
    #[error("perturbation bound cannot resolve all genericity violations: {0}")]
    PerturbationFailed(String),
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("reduction budget of {0} steps exhausted")]
    EffortExceeded(u64),
    #[error("diagram is not generic: {0}")]
    NotGeneric(String),
    #[error("up-arc {0:?} carries crossings of both roles")]
    LabelConflict(SegId),
    #[error("braiding invariant violated: {0}")]
    InvariantViolation(String),
    #[error("fixed portion is not a braid: {0}")]
    FixedPortionNotBraided(String),
    #[error("fixed part corrupted: {0}")]
    FixedPartCorrupted(String),
    #[error("move touches the fixed subbraid: {0}")]
    TouchesFixedSubbraid(String),
    #[error("no moving strand adjacent to surgery component {0}")]
    NoAdjacentString(usize),
    #[error("unknown surgery component {0}")]
    UnknownComponent(usize),
    #[error("{0} crossings exceed the state-sum bound {1}")]
    TooManyCrossings(usize, usize),
    #[error("{0} strands exceed the bound {1}")]
    TooManyStrands(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonRegularProjection(_) => "NonRegularProjection",
            Error::MissingAssignment(..) => "MissingAssignment",
            Error::InvalidDiagram(_) => "InvalidDiagram",
            Error::PointNotOnSegment(_) => "PointNotOnSegment",
            Error::PointOnCrossing(_) => "PointOnCrossing",
            Error::PatternMismatch(_) => "PatternMismatch",
            Error::ObstructedDisc(_) => "ObstructedDisc",
            Error::PerturbationFailed(_) => "PerturbationFailed",
            Error::StrandMismatch(..) => "StrandMismatch",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::EffortExceeded(_) => "EffortExceeded",
            Error::NotGeneric(_) => "NotGeneric",
            Error::LabelConflict(_) => "LabelConflict",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::FixedPortionNotBraided(_) => "FixedPortionNotBraided",
            Error::FixedPartCorrupted(_) => "FixedPartCorrupted",
            Error::TouchesFixedSubbraid(_) => "TouchesFixedSubbraid",
            Error::NoAdjacentString(_) => "NoAdjacentString",
            Error::UnknownComponent(_) => "UnknownComponent",
            Error::TooManyCrossings(..) => "TooManyCrossings",
            Error::TooManyStrands(..) => "TooManyStrands",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
