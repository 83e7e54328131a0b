use thiserror::Error;

/// Errors produced by the group, character and weight machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} exceeds cap: {actual} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: u64,
        actual: u64,
    },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not a normal subgroup: {0}")]
    NotNormal(String),
    #[error("character is not invariant: {0}")]
    NotInvariant(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("order of linear character divisible by p: {0}")]
    NotPPrime(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("character table construction failed: {0}")]
    TableFailed(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
