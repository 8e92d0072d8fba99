use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid weight {0}: weights must be at least 1")]
    InvalidWeight(u64),

    #[error("point {id} has a non-finite coordinate")]
    NonFiniteCoordinate { id: u64 },

    #[error("duplicate point id {0}")]
    DuplicateId(u64),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("rank {rank} is outside the catalog domain [0, {m})")]
    RankOutOfDomain { rank: u32, m: u32 },

    #[error("duplicate rank {0} in catalog")]
    DuplicateRank(u32),

    #[error("catalog was built without same-rank chains")]
    NotAugmented,

    #[error("base tree is not complete: {0}")]
    NotComplete(String),

    #[error("k must be at least 1")]
    ZeroK,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid generator spec: {0}")]
    Generator(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
