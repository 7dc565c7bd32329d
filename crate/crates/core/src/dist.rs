//! Exact finite distributions and their generic spaces.
//!
//! A reduced distribution `p_i = n_i / d_i` is realised as the uniform
//! distribution over `D = lcm(d_1, ..., d_N)` generic outcomes, with outcome
//! `i` absorbing `N_i = n_i * D / d_i` of them. [`GenericSpace::collapse`]
//! goes the other way.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::rational_to_f64;

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Builds `num/den` from machine integers. Panics if `den == 0`.
pub fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Finite distribution with strictly positive rational probabilities summing to one.
///
/// Outcome identity is the position in the list; nothing is sorted or merged.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactDistribution {
    probs: Vec<Rational>,
}

impl ExactDistribution {
    pub fn from_rationals(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Empty);
        }
        for (index, p) in probs.iter().enumerate() {
            if p.is_negative() {
                return Err(Error::NegativeProbability {
                    index,
                    value: p.clone(),
                });
            }
            if p.is_zero() {
                return Err(Error::ZeroProbability { index });
            }
        }
        let sum: Rational = probs.iter().sum();
        if !sum.is_one() {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self { probs })
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self> {
        let mut probs = Vec::with_capacity(pairs.len());
        for (index, &(n, d)) in pairs.iter().enumerate() {
            if d == 0 {
                return Err(Error::MalformedToken {
                    line: 1,
                    token: format!("{n}/{d}"),
                    reason: "zero denominator",
                });
            }
            if n == 0 {
                return Err(Error::ZeroProbability { index });
            }
            probs.push(ratio(n, d));
        }
        Self::from_rationals(probs)
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform distribution needs at least one outcome");
        let p = ratio(1, n as u64);
        Self {
            probs: vec![p; n],
        }
    }

    /// Parses whitespace-separated `n/d` or `n` tokens. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut probs = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let line = strip_comment(line);
            for token in line.split_whitespace() {
                let p = parse_rational_token(token, line_no + 1)?;
                if p.is_zero() {
                    return Err(Error::MalformedToken {
                        line: line_no + 1,
                        token: token.to_string(),
                        reason: "zero probability",
                    });
                }
                probs.push(p);
            }
        }
        Self::from_rationals(probs)
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn probs_f64(&self) -> Vec<f64> {
        self.probs.iter().map(rational_to_f64).collect()
    }

    /// Number of outcomes `N` in the measurement space.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn is_uniform(&self) -> bool {
        self.probs.iter().all(|p| *p == self.probs[0])
    }

    /// Minimal generic space: `D` is the lcm of the reduced denominators.
    pub fn generic_space(&self) -> GenericSpace {
        let dimension = self
            .probs
            .iter()
            .fold(BigUint::one(), |acc, p| acc.lcm(p.denom().magnitude()));
        let counts = self
            .probs
            .iter()
            .map(|p| p.numer().magnitude() * (&dimension / p.denom().magnitude()))
            .collect();
        GenericSpace {
            dimension,
            counts,
            labels: None,
        }
    }

    /// Independent product, outcomes in row-major order `(i, j) -> i * |other| + j`.
    pub fn tensor_product(&self, other: &Self) -> Self {
        let probs = self
            .probs
            .iter()
            .flat_map(|p| other.probs.iter().map(move |q| p * q))
            .collect();
        Self { probs }
    }
}

impl fmt::Display for ExactDistribution {
    /// Canonical form: reduced `n/d` tokens separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.probs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}/{}", p.numer(), p.denom())?;
        }
        Ok(())
    }
}

impl FromStr for ExactDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

fn parse_natural(digits: &str) -> Option<BigUint> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigUint::from_str(digits).ok()
}

/// Parses a non-negative rational token `n/d` or `n`.
pub(crate) fn parse_rational_token(token: &str, line: usize) -> Result<Rational> {
    let malformed = |reason| Error::MalformedToken {
        line,
        token: token.to_string(),
        reason,
    };
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num = parse_natural(num).ok_or_else(|| malformed("expected a natural numerator"))?;
    let den = parse_natural(den).ok_or_else(|| malformed("expected a natural denominator"))?;
    if den.is_zero() {
        return Err(malformed("zero denominator"));
    }
    Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
}

/// Uniform space of `D` generic outcomes grouped into `N` observed outcomes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenericSpace {
    dimension: BigUint,
    counts: Vec<BigUint>,
    labels: Option<Vec<String>>,
}

impl GenericSpace {
    /// Validates that every multiplicity is positive and that they sum to `dimension`.
    pub fn new(dimension: BigUint, counts: Vec<BigUint>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = counts.iter().position(Zero::is_zero) {
            return Err(Error::ZeroCount { index });
        }
        let sum: BigUint = counts.iter().sum();
        if sum != dimension {
            return Err(Error::CountSumMismatch {
                sum,
                expected: dimension,
            });
        }
        Ok(Self {
            dimension,
            counts,
            labels: None,
        })
    }

    pub fn from_u64(dimension: u64, counts: &[u64]) -> Result<Self> {
        Self::new(
            BigUint::from(dimension),
            counts.iter().map(|&c| BigUint::from(c)).collect(),
        )
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.counts.len() {
            return Err(Error::DimensionMismatch {
                left: labels.len(),
                right: self.counts.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Generic dimension `D`.
    pub fn dimension(&self) -> &BigUint {
        &self.dimension
    }

    /// Multiplicities `N_i`.
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Number of observed outcomes `N`.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Same space refined `k` times: `(kD, k N_i)`. Not minimal for `k > 1`.
    pub fn scaled(&self, k: u64) -> Self {
        assert!(k > 0, "scale factor must be positive");
        let k = BigUint::from(k);
        Self {
            dimension: &self.dimension * &k,
            counts: self.counts.iter().map(|c| c * &k).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Deformed uniform distribution `p_i = N_i / D`.
    pub fn collapse(&self) -> ExactDistribution {
        let d = BigInt::from(self.dimension.clone());
        ExactDistribution {
            probs: self
                .counts
                .iter()
                .map(|c| Rational::new(BigInt::from(c.clone()), d.clone()))
                .collect(),
        }
    }
}

/// `p_i = counts[i] / dimension`, validating the multiplicities first.
pub fn collapse(dimension: &BigUint, counts: &[BigUint]) -> Result<ExactDistribution> {
    GenericSpace::new(dimension.clone(), counts.to_vec()).map(|gs| gs.collapse())
}
