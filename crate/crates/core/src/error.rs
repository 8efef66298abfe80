use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size limit exceeded: {0}")]
    SizeCap(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("modulus {modulus:#b} is reducible: divisible by {factor:#b}")]
    Reducible { modulus: u64, factor: u64 },

    #[error("modulus {modulus:#b} rejected: {reason}")]
    BadModulus { modulus: u64, reason: String },

    #[error("not an additive subgroup: {a} + {b} is missing")]
    NotSubgroup { a: u32, b: u32 },

    #[error("inconsistent input: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
