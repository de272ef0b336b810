use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("need at least 4 marked points, got {0}")]
    TooFewPoints(usize),
    #[error("at most {max} marked points are supported, got {n}")]
    TooManyPoints { n: usize, max: usize },
    #[error("subset must be nonempty and proper in [{n}]")]
    NotProper { n: usize },
    #[error("subset has members outside [{n}]")]
    OutOfGround { n: usize },
    #[error("marked point index {index} is out of range 1..={n}")]
    PointOutOfRange { index: usize, n: usize },
    #[error("partition blocks must be nonempty, pairwise disjoint and cover [{n}]")]
    InvalidPartition { n: usize },
    #[error("weight a{index} = {value} is not positive")]
    NonPositiveWeight { index: usize, value: Rational },
    #[error("weight a{index} = {value} exceeds 1")]
    WeightAboveOne { index: usize, value: Rational },
    #[error("total weight {total} is below 2")]
    TotalBelowTwo { total: Rational },
    #[error("operation requires total weight > 2")]
    RequiresInterior,
    #[error("operation requires total weight exactly 2")]
    RequiresBoundary,
    #[error("ground sets differ: {left} vs {right} points")]
    GroundMismatch { left: usize, right: usize },
    #[error("curve is contracted by the reduction morphism and has no type")]
    ContractedCurve,
    #[error("curve type {0} is not a row of the intersection table")]
    UnlistedType(String),
    #[error("block order is not sorted by weight")]
    UnsortedBlocks,
    #[error("cannot sample {what} weight data for n = {n} with denominators <= {bound}")]
    InfeasibleSampling {
        what: &'static str,
        n: usize,
        bound: u64,
    },
}
