use thiserror::Error;

use crate::word::BinaryWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("invalid Coxeter matrix: {0}")]
    InvalidCoxeterMatrix(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("elements are not comparable in Bruhat order")]
    NotComparable,

    #[error("weight vanishes on more than one simple root but no inner ordering was supplied")]
    MissingInnerOrder,

    #[error("invalid order specification: {0}")]
    InvalidOrder(String),

    #[error("not a cd-polynomial: relation fails at E={e}, F={f}")]
    NotExpressible { e: BinaryWord, f: BinaryWord },

    #[error("quasisymmetric function is not in the peak algebra")]
    NotPeak,

    #[error("element must avoid generator {0}")]
    OutsideParabolic(usize),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
