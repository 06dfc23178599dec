use alloc::string::String;
use core::fmt;

/// Errors from distribution construction and the numeric operations.
///
/// The codec has its own error type ([`crate::codec::CodecError`]) because
/// its failure modes are wire-format problems, not numeric ones.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A constructor or operation argument violates its documented domain.
    InvalidParameter(&'static str),
    /// Pmf head plus analytic tail does not sum to 1 within tolerance.
    NotNormalized { total: f64 },
    /// Envelope with total mass below 1 indexes an empty class.
    MassBelowOne { sum: f64 },
    /// Malformed partition (overlapping or non-covering cells).
    InvalidPartition(&'static str),
    /// Restricted divergence hit a cell with `v(A) = 0 < mu(A)`.
    AbsoluteContinuity { cell: usize },
    /// A requested evaluation point lies outside the validity range.
    OutOfRange(&'static str),
    /// A solver could not bracket or meet its residual target.
    NoSolution(&'static str),
    /// Operation on an empty family of distributions.
    EmptyFamily,
    /// Spec-string parse failure.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::NotNormalized { total } => {
                write!(f, "pmf not normalized: total mass {total:e}")
            }
            Error::MassBelowOne { sum } => {
                write!(f, "envelope mass sum {sum:e} is below 1; class is empty")
            }
            Error::InvalidPartition(what) => write!(f, "invalid partition: {what}"),
            Error::AbsoluteContinuity { cell } => {
                write!(f, "restricted divergence undefined: cell {cell} has zero reference mass")
            }
            Error::OutOfRange(what) => write!(f, "out of validity range: {what}"),
            Error::NoSolution(what) => write!(f, "no solution: {what}"),
            Error::EmptyFamily => write!(f, "family of distributions is empty"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
