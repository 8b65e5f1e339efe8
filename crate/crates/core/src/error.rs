use thiserror::Error;

use crate::semiframe::MapError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("strand count must be at least 2 (got {0})")]
    InvalidStrands(u64),

    #[error("bad token {token:?}: {reason}")]
    Parse { token: String, reason: String },

    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: u16, right: u16 },

    #[error("generator index {index} out of range for {strands} strands")]
    LetterOutOfRange { index: u16, strands: u16 },

    #[error("band generator a({t},{s}) invalid for {strands} strands (need 1 <= s < t <= n)")]
    InvalidBandGenerator { t: u16, s: u16, strands: u16 },

    #[error("move at position {position} does not apply to a factorization of length {len}")]
    MoveOutOfRange { position: usize, len: usize },

    #[error("move #{index} of the sequence failed: {source}")]
    SequenceMove {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("factorization lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("path replay did not reach the target: {0}")]
    ReplayMismatch(String),

    #[error("invalid map: {0}")]
    Map(#[from] MapError),

    #[error("malformed input: {0}")]
    Input(String),
}
