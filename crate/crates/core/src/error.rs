use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field order {p}^{e} does not fit in 62 bits")]
    FieldOverflow { p: u64, e: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("no prime p = {residue} (mod {modulus}) in ({min}, {cap}]")]
    SearchExhausted {
        modulus: u64,
        residue: u64,
        min: u64,
        cap: u64,
    },

    #[error("{what}: gave up after {attempts} attempts")]
    BudgetExceeded { what: &'static str, attempts: u32 },

    #[error("{what} needs {needed} but the cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_)
            | Error::NotPrime(_)
            | Error::FieldOverflow { .. }
            | Error::DimensionMismatch(_) => 2,
            Error::CapExceeded { .. } => 3,
            Error::SearchExhausted { .. } | Error::BudgetExceeded { .. } => 4,
            Error::ZeroInverse | Error::Malformed(_) | Error::Io(_) => 1,
        }
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
