//! Combinatorial volumes and the entropy family.
//!
//! For a generic space `(D, N_1..N_N)` the absolutely typical ensemble has
//! volume `V_info = Π N_n^N_n` and the generic uniform distribution has
//! `V_uinfo = D^D`. Their ratio `R` satisfies `log_b R = D * H_b(P)`, so
//! `R^(1/D) = 2^H_2` is the effective dimension of the distribution.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::dist::{ExactDistribution, GenericSpace, Rational};
use crate::error::{Error, Result};
use crate::numeric::{big_to_f64, log2_big, log2_rational, rational_to_f64};

pub const DEFAULT_BASE: u32 = 2;

/// Largest `D` for which `V_info` and `V_uinfo` are materialised as big integers.
pub const DEFAULT_EXACT_LIMIT: u64 = 512;

fn check_base(base: u32) -> Result<f64> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    Ok(f64::from(base).log2())
}

fn check_order(order: f64) -> Result<()> {
    if !order.is_finite() || order <= 0.0 || order == 1.0 {
        return Err(Error::InvalidOrder(order));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct VolumeReport {
    /// `Π N_n^N_n`, present when `D <= exact_limit`.
    pub v_info: Option<BigUint>,
    /// `D^D`, present when `D <= exact_limit`.
    pub v_uinfo: Option<BigUint>,
    pub log2_v_info: f64,
    pub log2_v_uinfo: f64,
    /// `R = V_uinfo / V_info` as an exact rational.
    pub ratio: Option<Rational>,
    pub log2_ratio: f64,
    pub exact_computed: bool,
}

pub fn combinatorial_volumes(gs: &GenericSpace, exact_limit: u64) -> VolumeReport {
    let log2_v_info: f64 = gs
        .counts()
        .iter()
        .map(|n| big_to_f64(n) * log2_big(n))
        .sum();
    let d = gs.dimension();
    let log2_v_uinfo = big_to_f64(d) * log2_big(d);

    let exact_dim = d.to_u64().filter(|&d| d <= exact_limit);
    let (v_info, v_uinfo, ratio) = match exact_dim {
        Some(dim) => {
            // every N_n <= D <= exact_limit, so the exponents fit in u32
            let v_info = gs
                .counts()
                .iter()
                .map(|n| n.pow(n.to_u32().expect("count bounded by D")))
                .fold(BigUint::one(), |acc, x| acc * x);
            let v_uinfo = d.pow(dim as u32);
            let ratio = Rational::new(BigInt::from(v_uinfo.clone()), BigInt::from(v_info.clone()));
            (Some(v_info), Some(v_uinfo), Some(ratio))
        }
        None => (None, None, None),
    };

    VolumeReport {
        exact_computed: ratio.is_some(),
        v_info,
        v_uinfo,
        log2_v_info,
        log2_v_uinfo,
        ratio,
        log2_ratio: log2_v_uinfo - log2_v_info,
    }
}

/// `-Σ p_i log_b p_i`, each `log p_i` taken from the exact numerator and denominator.
pub fn shannon_entropy(dist: &ExactDistribution, base: u32) -> Result<f64> {
    let log2_b = check_base(base)?;
    let bits: f64 = dist
        .probs()
        .iter()
        .map(|p| -rational_to_f64(p) * log2_rational(p))
        .sum();
    Ok(bits / log2_b)
}

/// `(1/D) log_b R`, evaluated in the log domain as `log_b D - Σ (N_n/D) log_b N_n`.
pub fn shannon_via_ratio(gs: &GenericSpace, base: u32) -> Result<f64> {
    let log2_b = check_base(base)?;
    let d = gs.dimension();
    let d_f = big_to_f64(d);
    let log2_d = log2_big(d);
    let weighted: f64 = gs
        .counts()
        .iter()
        .map(|n| big_to_f64(n) / d_f * log2_big(n))
        .sum();
    Ok((log2_d - weighted) / log2_b)
}

/// `R^(1/D)`, computed as `2^H_2(P)`.
pub fn effective_dimension(dist: &ExactDistribution) -> f64 {
    let h = shannon_entropy(dist, 2).expect("base 2 is valid");
    h.exp2()
}

fn power_sum(dist: &ExactDistribution, order: f64) -> f64 {
    dist.probs()
        .iter()
        .map(|p| rational_to_f64(p).powf(order))
        .sum()
}

/// `(1 - r)^-1 log_b Σ p_i^r` for `r > 0, r != 1`.
pub fn renyi_entropy(dist: &ExactDistribution, order: f64, base: u32) -> Result<f64> {
    let log2_b = check_base(base)?;
    check_order(order)?;
    Ok(power_sum(dist, order).log2() / log2_b / (1.0 - order))
}

/// `(q - 1)^-1 (1 - Σ p_i^q)` for `q > 0, q != 1`. Not a logarithmic measure, so no base.
pub fn tsallis_entropy(dist: &ExactDistribution, order: f64) -> Result<f64> {
    check_order(order)?;
    Ok((1.0 - power_sum(dist, order)) / (order - 1.0))
}

/// `Π p_i`: the hypercuboid `Π N_i` over the hypercube `D^N`.
pub fn projection_ratio(dist: &ExactDistribution) -> Rational {
    dist.probs().iter().fold(Rational::one(), |acc, p| acc * p)
}

/// `Π N_i / D^N` from the generic space side.
pub fn projection_ratio_from_counts(gs: &GenericSpace) -> Rational {
    let num: BigUint = gs.counts().iter().product();
    let den = num_traits::pow(gs.dimension().clone(), gs.len());
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `log_b(N^2 * R_P^(1/N))` with `R_P = Π p_i`. Goes negative when some
/// outcome is very unlikely.
pub fn projection_entropy(dist: &ExactDistribution, base: u32) -> Result<f64> {
    let log2_b = check_base(base)?;
    let n = dist.len() as f64;
    let log2_ratio = log2_rational(&projection_ratio(dist));
    Ok((2.0 * n.log2() + log2_ratio / n) / log2_b)
}

/// Every entropy view of one distribution, in base `base` unless noted.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropySuite {
    pub shannon: f64,
    pub shannon_via_ratio: f64,
    pub effective_dimension: f64,
    /// `(order, value)`
    pub renyi: Option<(f64, f64)>,
    /// `(order, value)`, base-free.
    pub tsallis: Option<(f64, f64)>,
    pub projection: f64,
    pub base: u32,
}

impl EntropySuite {
    pub fn compute(
        dist: &ExactDistribution,
        base: u32,
        renyi_order: Option<f64>,
        tsallis_order: Option<f64>,
    ) -> Result<Self> {
        let renyi = renyi_order
            .map(|r| renyi_entropy(dist, r, base).map(|h| (r, h)))
            .transpose()?;
        let tsallis = tsallis_order
            .map(|q| tsallis_entropy(dist, q).map(|h| (q, h)))
            .transpose()?;
        Ok(Self {
            shannon: shannon_entropy(dist, base)?,
            shannon_via_ratio: shannon_via_ratio(&dist.generic_space(), base)?,
            effective_dimension: effective_dimension(dist),
            renyi,
            tsallis,
            projection: projection_entropy(dist, base)?,
            base,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::ratio;
    use proptest::prelude::*;

    fn dist(pairs: &[(u64, u64)]) -> ExactDistribution {
        ExactDistribution::from_pairs(pairs).unwrap()
    }

    fn gs(d: u64, counts: &[u64]) -> GenericSpace {
        GenericSpace::from_u64(d, counts).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn volumes_of_bent_coin() {
        let r = combinatorial_volumes(&gs(3, &[2, 1]), DEFAULT_EXACT_LIMIT);
        assert!(r.exact_computed);
        assert_eq!(r.v_info, Some(BigUint::from(4u8)));
        assert_eq!(r.v_uinfo, Some(BigUint::from(27u8)));
        assert_eq!(r.ratio, Some(ratio(27, 4)));
    }

    #[test]
    fn volumes_of_fair_coin_and_dyadic() {
        let r = combinatorial_volumes(&gs(2, &[1, 1]), DEFAULT_EXACT_LIMIT);
        assert_eq!(r.v_info, Some(BigUint::from(1u8)));
        assert_eq!(r.v_uinfo, Some(BigUint::from(4u8)));
        assert_eq!(r.ratio, Some(ratio(4, 1)));

        let r = combinatorial_volumes(&gs(8, &[4, 2, 1, 1]), DEFAULT_EXACT_LIMIT);
        assert_eq!(r.v_info, Some(BigUint::from(1024u32)));
        assert_eq!(r.v_uinfo, Some(BigUint::from(16_777_216u32)));
        // R = 2^(D H) = 2^(8 * 7/4)
        assert_eq!(r.ratio, Some(ratio(1 << 14, 1)));
        close(r.log2_ratio, 14.0, 1e-12);
    }

    #[test]
    fn volumes_skip_exact_path_above_limit() {
        let r = combinatorial_volumes(&gs(600, &[300, 300]), DEFAULT_EXACT_LIMIT);
        assert!(!r.exact_computed);
        assert!(r.v_info.is_none() && r.v_uinfo.is_none() && r.ratio.is_none());
        close(r.log2_ratio, 600.0, 1e-9);
        let r = combinatorial_volumes(&gs(600, &[300, 300]), 600);
        assert!(r.exact_computed);
    }

    #[test]
    fn shannon_examples() {
        close(shannon_entropy(&dist(&[(1, 2), (1, 4), (1, 8), (1, 8)]), 2).unwrap(), 1.75, 1e-15);
        close(shannon_entropy(&dist(&[(1, 2), (1, 2)]), 2).unwrap(), 1.0, 1e-15);
        close(shannon_entropy(&dist(&[(1, 4), (3, 4)]), 2).unwrap(), 0.81128, 1e-4);
        assert_eq!(
            shannon_entropy(&dist(&[(1, 2), (1, 2)]), 1),
            Err(Error::InvalidBase(1))
        );
        assert_eq!(shannon_entropy(&dist(&[(1, 1)]), 2).unwrap(), 0.0);
    }

    #[test]
    fn shannon_via_ratio_examples() {
        close(shannon_via_ratio(&gs(8, &[4, 2, 1, 1]), 2).unwrap(), 1.75, 1e-12);
        close(shannon_via_ratio(&gs(2, &[1, 1]), 2).unwrap(), 1.0, 1e-15);
        // (1/3) log2(27/4) by direct evaluation
        let expected = (27.0f64 / 4.0).log2() / 3.0;
        let h = shannon_via_ratio(&gs(3, &[2, 1]), 2).unwrap();
        close(h, expected, 1e-12);
        close(h, 0.91830, 1e-5);
        close(h, shannon_entropy(&dist(&[(2, 3), (1, 3)]), 2).unwrap(), 1e-12);
    }

    #[test]
    fn effective_dimension_table() {
        close(effective_dimension(&dist(&[(1, 2), (1, 2)])), 2.0, 5e-4);
        close(effective_dimension(&dist(&[(1, 4), (3, 4)])), 1.7548, 5e-4);
        close(effective_dimension(&dist(&[(1, 16), (15, 16)])), 1.2634, 5e-4);
        close(effective_dimension(&dist(&[(1, 256), (255, 256)])), 1.0259, 5e-4);
    }

    #[test]
    fn effective_dimension_is_root_of_exact_ratio() {
        // R^(1/D) straight from the big-integer volumes
        let d = dist(&[(1, 4), (3, 4)]);
        let r = combinatorial_volumes(&d.generic_space(), DEFAULT_EXACT_LIMIT);
        let root = rational_to_f64(&r.ratio.unwrap()).powf(1.0 / 4.0);
        close(effective_dimension(&d), root, 1e-12);
    }

    #[test]
    fn renyi_examples() {
        close(renyi_entropy(&dist(&[(1, 2), (1, 2)]), 2.0, 2).unwrap(), 1.0, 1e-15);
        let expected = -(10.0f64 / 16.0).log2();
        close(renyi_entropy(&dist(&[(1, 4), (3, 4)]), 2.0, 2).unwrap(), expected, 1e-15);
        close(expected, 0.67807, 1e-5);
        let d = dist(&[(1, 2), (1, 4), (1, 8), (1, 8)]);
        close(renyi_entropy(&d, 1.0 + 1e-6, 2).unwrap(), 1.75, 1e-4);
        for bad in [0.0, -1.0, 1.0, f64::NAN] {
            assert!(renyi_entropy(&d, bad, 2).is_err());
        }
    }

    #[test]
    fn tsallis_examples() {
        close(tsallis_entropy(&dist(&[(1, 2), (1, 2)]), 2.0).unwrap(), 0.5, 1e-15);
        assert_eq!(tsallis_entropy(&dist(&[(1, 1)]), 2.0).unwrap(), 0.0);
        close(
            tsallis_entropy(&dist(&[(1, 2), (1, 2)]), 1.0 + 1e-6).unwrap(),
            std::f64::consts::LN_2,
            1e-4,
        );
        assert_eq!(
            tsallis_entropy(&dist(&[(1, 2), (1, 2)]), 1.0),
            Err(Error::InvalidOrder(1.0))
        );
    }

    #[test]
    fn projection_ratio_examples() {
        assert_eq!(projection_ratio(&dist(&[(1, 2), (1, 2)])), ratio(1, 4));
        // 2 * 4 * 8 * 8 = 512
        assert_eq!(
            projection_ratio(&dist(&[(1, 2), (1, 4), (1, 8), (1, 8)])),
            ratio(1, 512)
        );
        let bent = dist(&[(2, 3), (1, 3)]);
        assert_eq!(projection_ratio(&bent), ratio(2, 9));
        assert_eq!(projection_ratio_from_counts(&bent.generic_space()), ratio(2, 9));
    }

    #[test]
    fn projection_entropy_examples() {
        close(projection_entropy(&dist(&[(1, 2), (1, 2)]), 2).unwrap(), 1.0, 1e-15);
        // log2(16 * 512^(-1/4)) = 4 - 9/4
        close(
            projection_entropy(&dist(&[(1, 2), (1, 4), (1, 8), (1, 8)]), 2).unwrap(),
            1.75,
            1e-15,
        );
        let skewed = projection_entropy(&dist(&[(1, 100), (99, 100)]), 2).unwrap();
        let expected = (4.0 * (99.0f64 / 10_000.0).sqrt()).log2();
        close(skewed, expected, 1e-12);
        close(skewed, -1.329, 1e-3);
        assert!(skewed < 0.0);
    }

    #[test]
    fn projection_entropy_of_uniform_is_log_n() {
        let mut prev = f64::NEG_INFINITY;
        for n in 1..=64usize {
            let h = projection_entropy(&ExactDistribution::uniform(n), 2).unwrap();
            close(h, (n as f64).log2(), 1e-12);
            assert!(h > prev);
            prev = h;
        }
    }

    #[test]
    fn suite_collects_everything() {
        let d = dist(&[(1, 2), (1, 4), (1, 8), (1, 8)]);
        let s = EntropySuite::compute(&d, 2, Some(2.0), Some(2.0)).unwrap();
        close(s.shannon, 1.75, 1e-12);
        close(s.shannon_via_ratio, 1.75, 1e-12);
        close(s.effective_dimension, 1.75f64.exp2(), 1e-12);
        close(s.projection, 1.75, 1e-12);
        assert_eq!(s.renyi.unwrap().0, 2.0);
        assert!(EntropySuite::compute(&d, 2, Some(1.0), None).is_err());
    }

    fn arb_dist() -> impl Strategy<Value = ExactDistribution> {
        proptest::collection::vec(1u64..500, 1..8).prop_map(|w| {
            let total: u64 = w.iter().sum();
            ExactDistribution::from_rationals(w.iter().map(|&x| ratio(x, total)).collect())
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn ratio_identity_in_several_bases(d in arb_dist(), base in prop::sample::select(vec![2u32, 3, 10])) {
            let direct = shannon_entropy(&d, base).unwrap();
            let via = shannon_via_ratio(&d.generic_space(), base).unwrap();
            prop_assert!((direct - via).abs() <= 1e-9);
        }

        #[test]
        fn base_change(d in arb_dist(), base in 3u32..17) {
            let hb = shannon_entropy(&d, base).unwrap();
            let h2 = shannon_entropy(&d, 2).unwrap();
            prop_assert!((hb * f64::from(base).log2() - h2).abs() <= 1e-9);
        }

        #[test]
        fn ratio_is_scale_invariant(d in arb_dist(), k in 1u64..50) {
            let gs = d.generic_space();
            let h = shannon_via_ratio(&gs, 2).unwrap();
            let hk = shannon_via_ratio(&gs.scaled(k), 2).unwrap();
            prop_assert!((h - hk).abs() <= 1e-9);
        }

        #[test]
        fn effective_dimension_bounds(d in arb_dist()) {
            let e = effective_dimension(&d);
            let n = d.len() as f64;
            prop_assert!(e >= 1.0 - 1e-12 && e <= n + 1e-9);
            if d.is_uniform() {
                prop_assert!((e - n).abs() <= 1e-9);
            } else {
                prop_assert!(e < n - 1e-12);
            }
            let h = shannon_entropy(&d, 2).unwrap();
            prop_assert!(h >= 0.0 && h <= n.log2() + 1e-12);
        }

        #[test]
        fn ratio_at_least_one(d in arb_dist()) {
            let report = combinatorial_volumes(&d.generic_space(), DEFAULT_EXACT_LIMIT);
            if let Some(r) = report.ratio {
                prop_assert!(r >= Rational::one());
                prop_assert_eq!(r.is_one(), d.len() == 1);
            }
            prop_assert!(report.log2_ratio >= -1e-9);
        }

        #[test]
        fn renyi_decreases_with_order(d in arb_dist(), r1 in 0.05f64..5.0, dr in 0.05f64..5.0) {
            let r2 = r1 + dr;
            prop_assume!((r1 - 1.0).abs() > 1e-3 && (r2 - 1.0).abs() > 1e-3);
            let h1 = renyi_entropy(&d, r1, 2).unwrap();
            let h2 = renyi_entropy(&d, r2, 2).unwrap();
            prop_assert!(h1 >= h2 - 1e-9);
        }

        #[test]
        fn projection_entropy_is_additive(p in arb_dist(), q in arb_dist()) {
            let pq = projection_entropy(&p.tensor_product(&q), 2).unwrap();
            let sum = projection_entropy(&p, 2).unwrap() + projection_entropy(&q, 2).unwrap();
            prop_assert!((pq - sum).abs() <= 1e-9);
        }

        #[test]
        fn projection_ratio_routes_agree(d in arb_dist()) {
            prop_assert_eq!(projection_ratio(&d), projection_ratio_from_counts(&d.generic_space()));
        }
    }
}
