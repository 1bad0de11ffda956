use thiserror::Error;

use crate::text::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid fiber label {0:?}")]
    InvalidFiberLabel(String),

    #[error("positions are 1-based; position 0 is not a coordinate")]
    ZeroPosition,

    #[error("fiber word period must be nonempty")]
    EmptyPeriod,

    #[error("coordinate {0} is constrained more than once")]
    DuplicateCoordinate(String),

    #[error("fiber {0} is given more than once")]
    DuplicateFiber(String),

    #[error("uniformity index needs at least one fiber and depth k >= 1")]
    DegenerateIndex,

    #[error("points are equal; no separating index exists")]
    IdenticalPoints,

    #[error("point {point} is not a member of neighborhood {nbhd}")]
    OutsideNeighborhood { point: String, nbhd: String },

    #[error("alphabet size must be between 2 and 10, got {0}")]
    InvalidAlphabet(u8),

    #[error("symbol {symbol} is outside alphabet of size {alphabet}")]
    SymbolOutOfRange { symbol: u8, alphabet: u8 },

    #[error("forbidden words must be nonempty")]
    EmptyForbiddenWord,

    #[error("window length {order} is shorter than the {needed} the forbidden words need")]
    WindowTooShort { order: usize, needed: usize },

    /// A constructive guarantee failed to hold. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}
