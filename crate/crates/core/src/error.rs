use num_bigint::BigUint;
use thiserror::Error;

use crate::dist::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: malformed token `{token}`: {reason}")]
    MalformedToken {
        line: usize,
        token: String,
        reason: &'static str,
    },
    #[error("distribution has no outcomes")]
    Empty,
    #[error("outcome {index} has zero probability")]
    ZeroProbability { index: usize },
    #[error("outcome {index} has negative probability {value}")]
    NegativeProbability { index: usize, value: Rational },
    #[error("probabilities sum to {sum}, not 1")]
    NotNormalized { sum: Rational },
    #[error("multiplicities sum to {sum}, expected generic dimension {expected}")]
    CountSumMismatch { sum: BigUint, expected: BigUint },
    #[error("multiplicity of outcome {index} is zero")]
    ZeroCount { index: usize },
    #[error("logarithm base must be an integer >= 2, got {0}")]
    InvalidBase(u32),
    #[error("entropy order must be positive and different from 1, got {0}")]
    InvalidOrder(f64),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("vector is not unit norm (squared norm {0})")]
    NotUnitNorm(f64),
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("matrix dimension {0} exceeds eigensolver limit of {max}", max = crate::linalg::MAX_EIGEN_DIM)]
    DimensionTooLarge(usize),
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
    #[error("invalid measurement set: {0}")]
    InvalidMeasurement(String),
    #[error("symbol {symbol} out of range for alphabet of size {alphabet}")]
    SymbolOutOfRange { symbol: usize, alphabet: usize },
    #[error("bit {position}: stream ends inside a codeword")]
    IncompleteCodeword { position: usize },
    #[error("bit {position}: bits match no codeword")]
    UnmatchedPrefix { position: usize },
    #[error("codeword {first} is a prefix of codeword {second}")]
    NotPrefixFree { first: String, second: String },
    #[error("codeword lengths violate the Kraft inequality")]
    KraftViolation,
    #[error("malformed stream: {0}")]
    Framing(String),
    #[error("line {line}: {reason}")]
    MalformedInput { line: usize, reason: String },
    #[error("invalid joint distribution: {0}")]
    InvalidJoint(String),
}
