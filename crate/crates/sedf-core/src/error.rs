//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed group spec `{0}`")]
    MalformedGroupSpec(String),

    #[error("factor {0} is not a prime power >= 2")]
    NotPrimePower(u64),

    #[error("group order {order} exceeds the element-enumeration cap {cap}")]
    GroupTooLarge { order: u64, cap: u64 },

    #[error("element {0:?} is not valid for the group")]
    InvalidElement(Vec<u64>),

    #[error("cyclotomic orders differ: {0} vs {1}")]
    MismatchedOrders(u64, u64),

    #[error("{q} and {n} are not coprime")]
    NonCoprime { q: u64, n: u64 },

    #[error("valuation of zero is undefined")]
    ZeroValuation,

    #[error("malformed family: {0}")]
    MalformedFamily(String),

    #[error("partial difference set contains the identity")]
    IdentityInPds,

    #[error("family is not near-complete")]
    NotNearComplete,

    #[error("family does not verify as an SEDF: {0}")]
    NotSedf(String),

    #[error("spectrum inconsistency: {0}")]
    SpectrumInconsistency(String),

    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("matrix shape or modulus mismatch")]
    MatrixMismatch,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("family document error: {0}")]
    Document(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),
}
