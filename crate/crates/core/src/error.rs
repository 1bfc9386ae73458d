use thiserror::Error;

use crate::freegroup::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid character {ch:?} at position {position} (expected one of a, b, A, B)")]
    InvalidCharacter { ch: char, position: usize },

    #[error("sigma_{generator} is not a permutation of 0..{degree}")]
    NotAPermutation { generator: char, degree: usize },

    #[error("action is not transitive (vertex {vertex} unreachable from basepoint)")]
    NotTransitive { vertex: usize },

    #[error("infinite index (vertex {vertex} missing {missing}-edge)")]
    InfiniteIndex { vertex: usize, missing: Letter },

    #[error("vertex {vertex} out of range for degree {degree}")]
    VertexOutOfRange { vertex: usize, degree: usize },

    #[error("unsupported format {0:?}")]
    UnsupportedFormat(String),

    #[error("{what} {requested} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("insufficient base: {0}")]
    InsufficientBase(String),

    #[error("termination bound requires a subgroup containing an odd-length element")]
    OddElementRequired,

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
