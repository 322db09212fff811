use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unstable moduli space (g={g}, n={n}): need 2g-2+n > 0")]
    Unstable { g: u32, n: usize },

    #[error("parse error: {0}")]
    Parse(String),

    /// Conflicting value for an already-cached key. Always fatal.
    #[error("cache integrity violation for key {key}: stored {stored}, new {new}")]
    CacheConflict { key: String, stored: String, new: String },

    #[error("cache file: {0}")]
    CacheFormat(String),

    /// A computed quantity violated an identity the engine checks on itself.
    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
