use thiserror::Error;

use crate::linkdiag::{CrossingId, EdgeId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid diagram: {0}")]
    Validation(String),
    #[error("segment {0} has the same region on both sides; choose another distinguished segment")]
    Degenerate(EdgeId),
    #[error("crossing {0} has two adjacent quadrants on each side of the circle")]
    Ambiguity(CrossingId),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("circle {0} has length 0; the diagram is split and its polynomial vanishes")]
    LengthZero(usize),
    #[error("operation needs a circle of length at least {required}, found {found}")]
    Length { required: usize, found: usize },
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
