use num_bigint::BigUint;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::dist::Rational;

/// `log2(n)` for arbitrarily large `n`, keeping 64 significant bits.
pub(crate) fn log2_big(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.log2() + shift as f64
}

/// `log2(r)` for a positive rational, evaluated as `log2(num) - log2(den)`.
pub(crate) fn log2_rational(r: &Rational) -> f64 {
    debug_assert!(r.is_positive());
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    log2_big(num) - log2_big(den)
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn big_to_f64(n: &BigUint) -> f64 {
    n.to_f64().unwrap_or(f64::INFINITY)
}
