use thiserror::Error;

use crate::formula::NodeId;
use crate::poly::VarId;

/// Errors shared across the polynomial, formula and decomposition layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mode mismatch: operands mix commutative and noncommutative polynomials")]
    ModeMismatch,

    #[error("missing value for variable {0}")]
    MissingVariable(VarId),

    #[error("no substitution given for variable {0}")]
    MissingSubstitution(VarId),

    #[error("weighting does not cover variable {0}")]
    MissingWeight(VarId),

    #[error("node {0:?} is not part of this formula")]
    NodeNotFound(NodeId),

    #[error("node {node:?} does not compute a homogeneous polynomial")]
    NotHomogeneous { node: NodeId },

    #[error("node {node:?} is not w-homogeneous")]
    NotWHomogeneous { node: NodeId },

    #[error("operation not available for ordered (noncommutative) monomials: {0}")]
    OrderedUnsupported(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed structure: {0}")]
    Structural(String),

    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
