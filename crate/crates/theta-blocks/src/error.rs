use thiserror::Error;

/// Errors reported by the engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank {0} is not supported (need r >= 2)")]
    Rank(usize),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("weight {weight} is above level {level}")]
    AboveLevel { weight: String, level: u32 },
    #[error("diagram {diagram} exceeds the {rows}x{cols} box")]
    Box { diagram: String, rows: usize, cols: usize },
    #[error("precision failure: rounding residual {residual} exceeds tolerance {tolerance}")]
    Precision { residual: String, tolerance: String },
    #[error("inadmissible triple: point {point} is not a branch pair for {lambda}")]
    Inadmissible { point: usize, lambda: String },
    #[error("sewing exponent {0} is not a nonnegative integer")]
    Sewing(String),
    #[error("sector mismatch: {0}")]
    Sector(String),
    #[error("state outside the ground stratum: {0}")]
    NotGround(String),
    #[error("unreducible slot: {0}")]
    Unreducible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
