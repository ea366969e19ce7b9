//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field size {size} exceeds the desk-scale cap {cap}")]
    CapExceeded { size: u128, cap: u64 },
    #[error("enumeration of {count} items exceeds the cap {cap}")]
    EnumerationCap { count: u128, cap: u64 },
    #[error("graph on {count} vertices exceeds the vertex cap {cap}")]
    VertexCap { count: u128, cap: u64 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("no codeword of rank {r} exists in a code with minimum distance {d}")]
    EmptySlice { r: usize, d: usize },
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("construction postcondition failed: {0}")]
    Postcondition(String),
    #[error("search budget exhausted after {nodes} node expansions (best known: {best})")]
    BudgetExhausted { nodes: u64, best: usize },
    #[error("invalid codebook file: {0}")]
    Codebook(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
