use thiserror::Error;

use crate::geometry::{Point, Region};

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate rectangle from corners ({}, {}) and ({}, {})", p.x, p.y, q.x, q.y)]
    Degenerate { p: Point, q: Point },

    #[error("coordinates must be finite")]
    NonFinite,

    #[error("invalid region [{}, {}] x [{}, {}]", .0.x_min, .0.x_max, .0.y_min, .0.y_max)]
    InvalidRegion(Region),

    #[error("empty rectangle set")]
    Empty,

    #[error("instance of size {n} exceeds the oracle cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),

    #[error("n = {n} exceeds the desk-scale limit of {limit}; pass --allow-large to run it")]
    TooLarge { n: usize, limit: usize },

    #[error("{algo} produced an invalid result on n = {n}, seed = {seed}")]
    Unverified { algo: String, n: usize, seed: u64 },

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
