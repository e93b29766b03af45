use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("database has no attributes")]
    NoAttributes,
    #[error("database is empty")]
    EmptyDatabase,
    #[error("sequence {0} has no time steps")]
    EmptySequence(usize),
    #[error("sequence has {cells} cells, not a multiple of {attrs} attributes")]
    RaggedSequence { cells: usize, attrs: usize },
    #[error("sequence {sequence} has {found} attributes, expected {expected}")]
    AttributeMismatch { sequence: usize, expected: usize, found: usize },
    #[error("unknown attribute {0}")]
    UnknownAttribute(u32),
    #[error("symbol {symbol} is outside the alphabet of attribute {attr}")]
    UnknownSymbol { attr: u32, symbol: u32 },
    #[error("pattern has no steps")]
    EmptyPattern,
    #[error("pattern step {0} is empty")]
    EmptyStep(usize),
    #[error("pattern step {step} assigns an attribute twice")]
    AttributeConflict { step: usize },
    #[error("cell (seq {seq}, time {time}, attr {attr}) is not covered")]
    Uncovered { seq: usize, time: usize, attr: u32 },
    #[error("cell (seq {seq}, time {time}, attr {attr}) is covered twice")]
    DoubleCovered { seq: usize, time: usize, attr: u32 },
    #[error("cover element does not match the data at seq {seq}, time {time}")]
    CoverMismatch { seq: usize, time: usize },
    #[error("pattern {0} is not in the code table")]
    UnknownPattern(usize),
    #[error("decode failed at seq {seq}, time {time}: {reason}")]
    Decode { seq: usize, time: usize, reason: &'static str },
    #[error("universal integer code is undefined for {0}")]
    NonPositiveInteger(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("infeasible generator spec: {0}")]
    Infeasible(&'static str),
}
