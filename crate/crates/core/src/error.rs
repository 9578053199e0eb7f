use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid hex color {0:?}, expected #RRGGBB")]
    InvalidHex(String),
    #[error("no foreground pixels remain after background masking")]
    AllBackground,
    #[error("cluster count must be at least 1")]
    InvalidK,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("dimension mismatch: expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no images could be evaluated")]
    NoImages,
    #[error("empty image")]
    EmptyImage,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
