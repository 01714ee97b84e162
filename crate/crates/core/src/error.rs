use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("form is not alternating; witness {witness:?}")]
    NotAlternating { witness: Vec<u32> },

    #[error("form is degenerate; radical vector {witness:?}")]
    Degenerate { witness: Vec<u32> },

    #[error("operation requires odd order, got modulus {0}")]
    EvenOrder(u32),

    #[error("{what} exceeds cap {cap} (reached {count})")]
    TooLarge { what: String, count: u64, cap: u64 },

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("cochain is not symmetric at ({x}, {y})")]
    NotSymmetric { x: usize, y: usize },

    #[error("not a 2-cocycle at ({x}, {y}, {z})")]
    NotCocycle { x: usize, y: usize, z: usize },

    #[error("no splitting found at conductors {tried:?}")]
    NoSplitting { tried: Vec<u32> },

    #[error("cocycle class not invariant under group element {0}")]
    NotInvariant(String),

    #[error("undecided: {0}")]
    Undecided(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
