#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("{0:?} is not a reduced word of the longest permutation")]
    NotReduced(Vec<u8>),
    #[error("n = {n} is above the supported limit {limit} for this operation")]
    TooLarge { n: usize, limit: usize },
    #[error("no {kind} move applies at position {position}")]
    InvalidMove { kind: &'static str, position: usize },
    #[error("words have different rank ({0} vs {1})")]
    RankMismatch(usize, usize),
    #[error("tiles {0:?} do not form a hexagon")]
    NotHexagon(Vec<(u8, u8)>),
    #[error("invalid BZ datum: {0}")]
    InvalidBz(String),
    #[error("unknown reference: {0}")]
    UnknownReference(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Invariant(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure;
