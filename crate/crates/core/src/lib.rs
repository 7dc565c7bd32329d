//! Exact-arithmetic toolkit for finite discrete distributions whose
//! probabilities are ratios of natural numbers.
//!
//! A distribution `p_i = n_i / d_i` lives in a *generic space* of dimension
//! `D = lcm(d_i)`, where outcome `i` is the merge of `N_i = p_i * D`
//! indistinguishable generic outcomes. From that picture the crate derives:
//!
//! - [`dist`]: exact distributions, generic spaces, collapse and products
//! - [`entropy`]: combinatorial volumes `Π N_i^N_i` and `D^D`, Shannon entropy
//!   as `(1/D) log R`, effective dimension, Rényi, Tsallis and projection entropy
//! - [`born`]: unit "joystick" vectors whose squared components are
//!   probabilities, density matrices and Born-rule measurement
//! - [`coding`]: the generic-space prefix code, a Huffman oracle and the
//!   `GSC1` bitstream container
//! - [`joint`]: two-variable joints, conditional entropy and mutual information
//!
//! All probability bookkeeping is done with arbitrary-precision rationals;
//! floating point only appears at the final logarithm.

#![forbid(unsafe_code)]

pub mod born;
pub mod coding;
pub mod dist;
pub mod entropy;
mod error;
pub mod joint;
pub mod linalg;
mod numeric;
pub mod stream;

pub use born::{
    born_probability, measure, sample, validate_density, DensityMatrix, DensityReport,
    JspsVector, MeasurementSet,
};
pub use coding::{huffman_oracle, CodeMode, CodeStats, Codeword, PrefixCode};
pub use dist::{ExactDistribution, GenericSpace, Rational};
pub use entropy::{
    combinatorial_volumes, effective_dimension, projection_entropy, projection_ratio,
    renyi_entropy, shannon_entropy, shannon_via_ratio, tsallis_entropy, EntropySuite,
    VolumeReport, DEFAULT_BASE, DEFAULT_EXACT_LIMIT,
};
pub use error::{Error, Result};
pub use joint::{InequalityReport, JointDistribution};
