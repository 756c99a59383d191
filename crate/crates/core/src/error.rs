use thiserror::Error;

use crate::algebra::AlgebraTag;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("the root tree e has no grafting decomposition")]
    RootTree,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("algebra mismatch: expected {expected}, found {found}")]
    TagMismatch {
        expected: AlgebraTag,
        found: AlgebraTag,
    },
    #[error("slot layout mismatch: expected {expected}, found {found}")]
    SlotMismatch { expected: String, found: String },
    #[error("{0} is not a generator V(t) = (e v t)")]
    NotGenerator(String),
    #[error("ring values of incompatible shapes: {0}")]
    Shape(String),
    #[error("value is not invertible: {0}")]
    NotInvertible(String),
    #[error("series precondition failed: {0}")]
    Series(String),
    #[error("character has no value for tree {0}")]
    MissingValue(String),
    #[error("character values on a commutative algebra must commute: {0}")]
    NonCommuting(String),
    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
