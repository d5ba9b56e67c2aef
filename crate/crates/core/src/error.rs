use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition parts must be weakly decreasing, got {0:?}")]
    NotWeaklyDecreasing(Vec<u32>),

    #[error("beta-set entries must be strictly decreasing, got {0:?}")]
    NotStrictlyDecreasing(Vec<u32>),

    #[error("entry sequence {0:?} is not the merged entries of a symbol")]
    InvalidEntrySequence(Vec<u32>),

    #[error("cannot parse {what} from {text:?}")]
    Parse { what: &'static str, text: String },

    #[error("symbol {symbol} does not belong to {group}")]
    NotInFamily { symbol: String, group: String },

    #[error("symbols {0} and {1} lie in different families")]
    FamilyMismatch(String, String),

    #[error("sign {eps} cannot order the family of defect {delta}")]
    IncompatibleSign { eps: char, delta: i32 },

    #[error("{0} is not a symplectic/even-orthogonal dual pair")]
    InvalidPair(String),

    #[error("tau = {0} is negative")]
    NegativeTau(i64),

    #[error("block index {k} is outside 0..={max}")]
    BlockOutOfRange { k: u32, max: u32 },

    #[error("entry move ({k}, {l}) violates its preconditions: {reason}")]
    EntryMove { k: usize, l: usize, reason: &'static str },

    #[error("residual theta set of {source_symbol} under {pair} is empty")]
    EmptyResidual { source_symbol: String, pair: String },

    #[error("no first occurrence of {symbol} below rank {bound}")]
    SearchExhausted { symbol: String, bound: u32 },
}
