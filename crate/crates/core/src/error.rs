use thiserror::Error;

use crate::category::Arc;
use crate::cyclic::BoundaryPoint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("segment {segment} is outside 1..={n}")]
    SegmentOutOfRange { segment: u32, n: u32 },
    #[error("an advancing endpoint track cannot start at accumulation point {0}")]
    AdvancingFromAccumulation(BoundaryPoint),
    #[error("{{{0}, {1}}} is not an arc")]
    NotAnArc(BoundaryPoint, BoundaryPoint),
    #[error("Hom({0}, {1}) is zero")]
    NoMorphism(Arc, Arc),
    #[error("morphisms are not composable: target of the first differs from source of the second")]
    NotComposable,
    #[error("the cone formula needs a non-zero canonical morphism")]
    ZeroMorphism,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition is not non-crossing")]
    Crossing,
    #[error("invalid decoration at index {index}: {reason}")]
    InvalidDecoration { index: u32, reason: String },
    #[error("thread entry at step {step} is not an arc")]
    DegenerateThread { step: u64 },
    #[error("invalid index sequence: {0}")]
    InvalidIndices(String),
    #[error("arc does not belong to the completion")]
    NotInCompletion,
    #[error("invalid scene: {0}")]
    InvalidScene(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid value: {0}")]
    InvalidValue(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable snake-case name of the variant, used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SegmentOutOfRange { .. } => "segment_out_of_range",
            Error::AdvancingFromAccumulation(_) => "advancing_from_accumulation",
            Error::NotAnArc(..) => "not_an_arc",
            Error::NoMorphism(..) => "no_morphism",
            Error::NotComposable => "not_composable",
            Error::ZeroMorphism => "zero_morphism",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::Crossing => "crossing",
            Error::InvalidDecoration { .. } => "invalid_decoration",
            Error::DegenerateThread { .. } => "degenerate_thread",
            Error::InvalidIndices(_) => "invalid_indices",
            Error::NotInCompletion => "not_in_completion",
            Error::InvalidScene(_) => "invalid_scene",
            Error::Malformed(_) => "malformed",
            Error::InvalidValue(_) => "invalid_value",
        }
    }
}
