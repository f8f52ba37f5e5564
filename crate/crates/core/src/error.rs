//! Crate-wide error type.

use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A coefficient or norm was requested below the known precision floor.
    Indeterminate,
    /// An operation needs deeper input precision than was supplied.
    PrecisionShort { needed: i64, have: i64 },
    DivisionByZero,
    NotPrime(u64),
    /// The operation only makes sense in characteristic zero.
    CharacteristicNotZero,
    /// A denominator vanished under reduction mod p.
    BadReduction,
    /// Input violates a documented precondition of the operation.
    Precondition(&'static str),
    /// An identity that provably holds failed to check out; indicates a bug
    /// or corrupted input rather than a recoverable condition.
    Verification(&'static str),
    /// Square unimodular matrix expected.
    NonUnimodular,
    /// Malformed switch data.
    BadSwitchData(&'static str),
    /// Malformed profile (first failing point and condition).
    BadProfile { q: i64, condition: &'static str },
    Parse(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Indeterminate => write!(f, "value is indeterminate at the stored precision"),
            Error::PrecisionShort { needed, have } => {
                write!(f, "precision too short: need {needed}, have {have}")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::CharacteristicNotZero => {
                write!(f, "operation requires characteristic zero")
            }
            Error::BadReduction => write!(f, "denominator not invertible mod p"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Verification(msg) => write!(f, "verification failed: {msg}"),
            Error::NonUnimodular => write!(f, "matrix is not unimodular"),
            Error::BadSwitchData(msg) => write!(f, "invalid switch data: {msg}"),
            Error::BadProfile { q, condition } => {
                write!(f, "invalid profile at q = {q}: condition {condition}")
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}
