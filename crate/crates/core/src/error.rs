//! Error and result types shared by every module of the crate.

use thiserror::Error;

/// All failure modes of the library.
///
/// Operations that enumerate objects (matrix spaces, subspace lattices,
/// rook placements, codewords) report [`Error::BudgetExceeded`] instead of
/// silently running forever; exact transforms report
/// [`Error::NonIntegerResult`] / [`Error::InexactDivision`] when a division
/// that must be exact is not, since that always indicates bad input or an
/// arithmetic bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime number")]
    NonPrime(u64),
    #[error("modulus is not a monic irreducible polynomial of the requested degree")]
    ReducibleModulus,
    #[error("no built-in modulus for GF({p}^{e}); supply one explicitly")]
    UnsupportedSize { p: u64, e: u32 },
    #[error("division by zero field element")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("enumeration of {required} objects exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("exact transform produced a non-integer value")]
    NonIntegerResult,
    #[error("polynomial division left a remainder")]
    InexactDivision,
    #[error("column heights must be non-decreasing")]
    NonMonotone,
    #[error("the zero code has no minimum distance")]
    EmptyCode,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
