use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed basket near `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("pair ({b},{r}) violates 0 < b <= r/2")]
    PairOutOfRange { b: u64, r: u64 },

    #[error("Delta^{0} is only defined for n >= 2")]
    DeltaOrder(u32),

    #[error("l(-{0}) is only defined for n >= 1")]
    EllOrder(u32),

    #[error("plurigenus horizon {0} is below 2")]
    Horizon(u32),

    #[error("level {0} is not one of 0, 5, 6, 7, ...")]
    InvalidLevel(u32),

    #[error("{q}/{p} already lies in S^({level}); nothing to bracket")]
    NotBracketed { q: u64, p: u64, level: u32 },

    #[error("pair selector {index} out of range for a basket of {len} pairs")]
    SelectorOutOfRange { index: usize, len: usize },

    #[error("the two selectors refer to the same slot {0}")]
    SameSlot(usize),

    #[error("sum of r is {sum_r}, above the domination cap {cap}")]
    SizeBound { sum_r: u64, cap: u64 },

    #[error("canonical chain has not stabilized by level {cap}")]
    ChainNotStabilized { cap: u32 },

    #[error("missing anti-plurigenus P_-{0}")]
    MissingPlurigenus(u32),

    #[error("non-integral anti-plurigenus at m = {m}: {value}")]
    Integrality { m: u32, value: String },

    #[error("no formal basket satisfies the search configuration")]
    NoHits,

    #[error("invalid search configuration: {0}")]
    Config(String),

    #[error("internal identity violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
