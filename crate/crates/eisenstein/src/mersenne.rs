//! Eisenstein Mersenne numbers M_k = (1 − ω)^k − 1, their closed-form
//! coefficients, primality scanning, and the Euclid-style construction of
//! even norm-perfect elements.

use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::EisensteinInt;
use crate::primes::{is_rational_prime, perfect_square_root, small_primes};

/// One row of a Mersenne scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MersenneRecord {
    pub p: u64,
    pub value: EisensteinInt,
    #[serde(with = "crate::serde_dec")]
    pub norm: BigUint,
    pub prime: bool,
    pub p_mod_12: u8,
    /// Whether M_p lies in the canonical sector a > b ≥ 0. For prime M_p
    /// this holds exactly when p ≡ 11 (mod 12).
    pub in_region: bool,
}

/// M_k = (1 − ω)^k − 1.
pub fn mersenne_number(k: u64) -> EisensteinInt {
    assert!(k >= 1, "Mersenne numbers start at k = 1");
    &EisensteinInt::one_minus_omega().pow(k) - &EisensteinInt::one()
}

/// The closed form for (1 − ω)^p: with h = ⌊p/2⌋, the coefficient pair
/// cycles with p mod 12 over multiples of 3^h. Must agree with direct
/// exponentiation for every p.
pub fn power_table_entry(p: u64) -> EisensteinInt {
    assert!(p >= 1, "the table starts at p = 1");
    let h = u32::try_from(p / 2).expect("exponent too large for the closed form");
    let t = BigInt::from(3).pow(h);
    let double: BigInt = &t << 1;
    let (a, b) = match p % 12 {
        1 => (t.clone(), -&t),
        2 => (BigInt::zero(), -&t),
        3 => (-&t, -double),
        4 => (-&t, -&t),
        5 => (-double, -&t),
        6 => (-&t, BigInt::zero()),
        7 => (-&t, t.clone()),
        8 => (BigInt::zero(), t.clone()),
        9 => (t.clone(), double),
        10 => (t.clone(), t.clone()),
        11 => (double, t.clone()),
        0 => (t.clone(), BigInt::zero()),
        _ => unreachable!(),
    };
    EisensteinInt { a, b }
}

/// Whether M_p is an Eisenstein Mersenne prime. The exponent must itself be
/// a rational prime; primality of M_p is then decided by primality of its
/// norm, which is sound because the norm of a Mersenne number is never the
/// square of an inert prime (asserted here rather than assumed).
pub fn is_mersenne_prime(p: u64) -> bool {
    if !is_rational_prime(&BigUint::from(p)) {
        return false;
    }
    let norm = mersenne_number(p).norm();
    assert!(
        perfect_square_root(&norm).is_none(),
        "norm of M_{p} is a perfect square; the norm-primality shortcut would be unsound"
    );
    is_rational_prime(&norm)
}

/// Scan every prime exponent p ≤ max_exponent, in ascending order.
/// Exponents are evaluated in parallel; the output order is fixed.
pub fn scan_mersenne(max_exponent: u64) -> Vec<MersenneRecord> {
    prime_exponents_up_to(max_exponent)
        .into_par_iter()
        .map(|p| {
            let value = mersenne_number(p);
            let norm = value.norm();
            assert!(
                perfect_square_root(&norm).is_none(),
                "norm of M_{p} is a perfect square"
            );
            let prime = is_rational_prime(&norm);
            let in_region = value.is_in_region();
            MersenneRecord {
                p,
                value,
                norm,
                prime,
                p_mod_12: (p % 12) as u8,
                in_region,
            }
        })
        .collect()
}

fn prime_exponents_up_to(max: u64) -> Vec<u64> {
    if max < u64::from(crate::primes::TRIAL_DIVISION_LIMIT) {
        small_primes()
            .iter()
            .copied()
            .map(u64::from)
            .take_while(|&p| p <= max)
            .collect()
    } else {
        // scans this large are far outside the intended range, but stay correct
        (2..=max)
            .filter(|&p| is_rational_prime(&BigUint::from(p)))
            .collect()
    }
}

/// The Euclid-style even norm-perfect element (1 − ω)^{k−1}·M_k.
///
/// Requires k ≡ 11 (mod 12) — the residue classes for which M_k lands in
/// the canonical sector — and M_k prime. The error names whichever
/// hypothesis failed.
pub fn euclid_norm_perfect(k: u64) -> Result<EisensteinInt> {
    if k % 12 != 11 {
        return Err(Error::EuclidResidue { k, found: k % 12 });
    }
    if !is_mersenne_prime(k) {
        return Err(Error::EuclidNotMersennePrime { k });
    }
    Ok(&EisensteinInt::one_minus_omega().pow(k - 1) * &mersenne_number(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eis(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn mersenne_number_examples() {
        assert_eq!(mersenne_number(2), eis(-1, -3));
        assert_eq!(mersenne_number(3), eis(-4, -6));
        assert_eq!(mersenne_number(1), eis(0, -1));
        assert_eq!(mersenne_number(11), eis(485, 243));
    }

    #[test]
    fn table_examples() {
        assert_eq!(power_table_entry(2), eis(0, -3));
        assert_eq!(power_table_entry(11), eis(486, 243));
        assert_eq!(power_table_entry(12), eis(729, 0));
        assert_eq!(power_table_entry(1), eis(1, -1));
    }

    #[test]
    fn table_matches_direct_power() {
        let base = EisensteinInt::one_minus_omega();
        for p in 1..=240 {
            assert_eq!(
                power_table_entry(p),
                base.pow(p),
                "closed form disagrees at p = {p}"
            );
        }
    }

    #[test]
    fn mersenne_prime_examples() {
        assert!(is_mersenne_prime(2));
        assert!(!is_mersenne_prime(3));
        assert!(is_mersenne_prime(11));
        assert!(!is_mersenne_prime(4));
        assert!(!is_mersenne_prime(13));
    }

    #[test]
    fn scan_small() {
        let records = scan_mersenne(3);
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].p, 2);
        assert!(records[0].prime);
        assert_eq!(records[1].p, 3);
        assert!(!records[1].prime);

        assert!(scan_mersenne(1).is_empty());
    }

    #[test]
    fn mersenne_norms_are_one_mod_three() {
        for record in scan_mersenne(60) {
            assert_eq!((record.norm % 3u32), BigUint::from(1u32), "M_p is odd");
            assert!(!record.value.is_even());
        }
    }

    #[test]
    fn euclid_construction_for_eleven() {
        let alpha = euclid_norm_perfect(11).unwrap();
        assert_eq!(
            alpha,
            &EisensteinInt::one_minus_omega().pow(10) * &eis(485, 243)
        );
        assert!(alpha.is_even());
        let expected_norm = BigUint::from(3u32).pow(10u32) * BigUint::from(176419u32);
        assert_eq!(alpha.norm(), expected_norm);
    }

    #[test]
    fn euclid_rejections_name_the_failed_hypothesis() {
        match euclid_norm_perfect(23) {
            Err(Error::EuclidNotMersennePrime { k: 23 }) => {}
            other => panic!("expected the Mersenne-primality error, got {other:?}"),
        }
        match euclid_norm_perfect(79) {
            Err(Error::EuclidResidue { k: 79, found: 7 }) => {}
            other => panic!("expected the residue-class error, got {other:?}"),
        }
    }

    #[test]
    fn record_json_schema() {
        let record = &scan_mersenne(2)[0];
        let json = serde_json::to_string(record).unwrap();
        assert_eq!(
            json,
            r#"{"p":2,"value":"-1-3w","norm":"7","prime":true,"p_mod_12":2,"in_region":false}"#
        );
        let back: MersenneRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, record);
    }

    #[test]
    fn zero_power_edge() {
        assert!(!EisensteinInt::one_minus_omega().pow(0).is_zero());
    }
}
