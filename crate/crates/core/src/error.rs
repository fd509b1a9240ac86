//! Error type shared by all modules.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Parse failure with byte position in the input text.
    Parse {
        pos: usize,
        msg: String,
    },
    /// Negative exponent in polynomial text.
    NegativeExponent {
        pos: usize,
    },
    ZeroPolynomial,
    NotWeightedHomogeneous,
    /// Matrix rows are linearly dependent.
    RankDeficient,
    NonConvex(String),
    InconsistentFit(String),
    Infeasible(String),
    /// Projection whose vertex structure changes with m.
    MDependentCombinatorics(String),
    UnknownBoundary(String),
    UnknownSurface(String),
    UnknownCase(String),
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
            Error::NegativeExponent { pos } => write!(f, "negative exponent at byte {pos}"),
            Error::ZeroPolynomial => write!(f, "zero polynomial"),
            Error::NotWeightedHomogeneous => write!(f, "polynomial is not weighted homogeneous"),
            Error::RankDeficient => write!(f, "rows are linearly dependent"),
            Error::NonConvex(s) => write!(f, "non-convex polygon: {s}"),
            Error::InconsistentFit(s) => write!(f, "inconsistent interpolation: {s}"),
            Error::Infeasible(s) => write!(f, "infeasible system: {s}"),
            Error::MDependentCombinatorics(s) => {
                write!(f, "projection has m-dependent vertex structure: {s}")
            }
            Error::UnknownBoundary(s) => write!(f, "unknown boundary divisor: {s}"),
            Error::UnknownSurface(s) => write!(f, "unknown surface: {s}"),
            Error::UnknownCase(s) => write!(f, "unknown case: {s}"),
            Error::InvalidInput(s) => write!(f, "invalid input: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
