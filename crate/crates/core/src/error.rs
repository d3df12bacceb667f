use thiserror::Error;

use crate::setfn::{Subset, TwoFace};
use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ground set: {0}")]
    InvalidGroundSet(String),

    #[error("ground set of size {n} exceeds the size guard of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("subset mask {mask:#x} is out of range for a ground set of size {n}")]
    SubsetOutOfRange { mask: u32, n: usize },

    #[error("unknown element name `{0}`")]
    UnknownElement(String),

    #[error("invalid 2-face: {0}")]
    InvalidFace(String),

    #[error("expected {expected} values, found {found}")]
    WrongLength { expected: usize, found: usize },

    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid rational literal `{0}`")]
    BadRational(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("function is not submodular: slack {slack} on face {face}")]
    NotSubmodular { face: TwoFace, slack: Rational },

    #[error("strictness violated: zero slack on face {0}")]
    ZeroSlack(TwoFace),

    #[error("{k} components yield 2^{k} unions, above the enumeration cap of 2^{cap}")]
    TooManyUnions { k: usize, cap: usize },

    #[error("internal consistency failure: additivity broken at subset {0}")]
    DecompositionMismatch(Subset),

    #[error("malformed set-function file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
