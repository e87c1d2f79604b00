use core::fmt;

use num_bigint::BigUint;

use crate::realizability::Failure;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An index argument was 0 where indices start at 1.
    ZeroIndex,
    /// The p-adic valuation of 0 was requested.
    ZeroValuation,
    NotPrime(u64),
    EmptySequence,
    ZeroHorizon,
    /// The sequence prefix is shorter than the operation needs.
    InsufficientTerms { required: usize, available: usize },
    NegativeTerm { index: usize },
    /// Localization needs strictly positive terms.
    NonPositiveTerm { index: usize },
    /// Divisibility checks cannot divide by a zero term.
    ZeroTerm { index: usize },
    InvalidRecurrence(&'static str),
    StirlingRange { n: usize, k: usize },
    ZeroMultiplier,
    InvalidTimeChange(&'static str),
    /// A sampling index or exponent does not fit in machine arithmetic.
    Overflow { index: usize },
    BoundTooSmall { bound: u64, minimum: u64 },
    /// The prefix fails (D) or (S) and so has no realizing permutation.
    NotRealizable(Failure),
    PointCapExceeded { total: BigUint, cap: usize },
    /// A term has a cofactor that trial division and primality testing could
    /// not resolve.
    IncompleteFactorization { index: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroIndex => write!(f, "index must be at least 1"),
            Error::ZeroValuation => write!(f, "valuation of 0 is infinite"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::EmptySequence => write!(f, "sequence has no terms"),
            Error::ZeroHorizon => write!(f, "horizon must be at least 1"),
            Error::InsufficientTerms { required, available } => write!(
                f,
                "insufficient data: {required} terms required, {available} available"
            ),
            Error::NegativeTerm { index } => {
                write!(f, "term {index} is negative; realizable sequences are non-negative")
            }
            Error::NonPositiveTerm { index } => write!(
                f,
                "term {index} is not strictly positive; p-parts need positive terms"
            ),
            Error::ZeroTerm { index } => {
                write!(f, "term {index} is zero; divisibility by 0 is undefined")
            }
            Error::InvalidRecurrence(why) => write!(f, "invalid recurrence: {why}"),
            Error::StirlingRange { n, k } => write!(f, "Stirling index out of range: n={n}, k={k}"),
            Error::ZeroMultiplier => write!(f, "multiplier must be at least 1"),
            Error::InvalidTimeChange(why) => write!(f, "invalid time change: {why}"),
            Error::Overflow { index } => write!(f, "value at index {index} overflows"),
            Error::BoundTooSmall { bound, minimum } => {
                write!(f, "bound {bound} is below the minimum {minimum}")
            }
            Error::NotRealizable(failure) => write!(
                f,
                "prefix is not realizable: fails {} at n={}",
                failure.condition, failure.n
            ),
            Error::PointCapExceeded { total, cap } => write!(
                f,
                "explicit permutation needs {total} points, above the cap of {cap}"
            ),
            Error::IncompleteFactorization { index } => {
                write!(f, "could not completely factor term {index}")
            }
        }
    }
}

impl core::error::Error for Error {}
