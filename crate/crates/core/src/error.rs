use thiserror::Error;

use crate::selfdual::Space;

#[derive(Debug, Error)]
pub enum Error {
    #[error("incompatible spaces: {op} expects {expected:?}, got {found:?}")]
    SpaceMismatch {
        op: &'static str,
        expected: Space,
        found: Space,
    },
    #[error("tails are not compatible for {op}: shifts {left} and {right}")]
    TailMismatch {
        op: &'static str,
        left: isize,
        right: isize,
    },
    #[error("unsupported: odd index out of scope (tail shift {0})")]
    OddShift(isize),
    #[error("operator is not of block plus invertible-tail form: {0}")]
    NotBlockShift(String),
    #[error("{op} requires a finite-rank perturbation of the identity")]
    NotFiniteRank { op: &'static str },
    #[error("relation {relation} violated: max residual {residual:.3e} exceeds {tolerance:.1e}")]
    Relation {
        relation: String,
        residual: f64,
        tolerance: f64,
    },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
