//! Sum-of-divisors functions and the perfect-number predicates.
//!
//! `rational_sigma` is the classical σ over ℤ. `sigma_star` is its extension
//! to ℤ[ω]: the product of geometric series (π^{k+1} − 1)/(π − 1) over the
//! canonical prime factorization, the unit discarded. Because the unit is
//! discarded, σ* is defined on every nonzero element and is invariant across
//! the six associates.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{factor_with, PrimeFactorization};
use crate::int::EisensteinInt;
use crate::primes::{factor_rational, Effort};

/// σ(n) = Σ_{d|n} d for n ≥ 1, via the geometric-series product over the
/// rational prime factorization.
pub fn rational_sigma(n: &BigUint) -> Result<BigUint> {
    rational_sigma_with(n, &Effort::default())
}

pub fn rational_sigma_with(n: &BigUint, effort: &Effort) -> Result<BigUint> {
    assert!(!n.is_zero(), "rational_sigma requires n >= 1");
    let mut sigma = BigUint::one();
    for (p, e) in factor_rational(n, effort)? {
        sigma *= (p.pow(e + 1) - 1u32) / (&p - 1u32);
    }
    Ok(sigma)
}

/// σ*(x): the complex sum of divisors of a nonzero element.
pub fn sigma_star(x: &EisensteinInt) -> Result<EisensteinInt> {
    sigma_star_with(x, &Effort::default())
}

pub fn sigma_star_with(x: &EisensteinInt, effort: &Effort) -> Result<EisensteinInt> {
    Ok(sigma_star_factored(&factor_with(x, effort)?))
}

/// σ* evaluated from an existing factorization. Only the prime exponents
/// matter; the unit is ignored, so σ*(unit) = 1.
pub fn sigma_star_factored(factorization: &PrimeFactorization) -> EisensteinInt {
    let one = EisensteinInt::one();
    let mut out = one.clone();
    for entry in &factorization.factors {
        let numerator = &entry.prime.pow(entry.exp as u64 + 1) - &one;
        let denominator = &entry.prime - &one;
        let term = numerator
            .exact_div(&denominator)
            .expect("geometric-series division is exact; a remainder means the factorization is wrong");
        out = &out * &term;
    }
    out
}

/// All divisors of `x` built from its canonical primes: the products
/// ∏ π^j for 0 ≤ j ≤ k, in lexicographic exponent order. This is the
/// brute-force expansion that σ* must sum to, used as an oracle.
pub fn canonical_divisors(x: &EisensteinInt) -> Result<Vec<EisensteinInt>> {
    canonical_divisors_with(x, &Effort::default())
}

pub fn canonical_divisors_with(
    x: &EisensteinInt,
    effort: &Effort,
) -> Result<Vec<EisensteinInt>> {
    let factorization = factor_with(x, effort)?;
    let mut divisors = vec![EisensteinInt::one()];
    for entry in &factorization.factors {
        let mut powers = Vec::with_capacity(entry.exp as usize + 1);
        let mut power = EisensteinInt::one();
        for _ in 0..=entry.exp {
            powers.push(power.clone());
            power = &power * &entry.prime;
        }
        divisors = divisors
            .iter()
            .flat_map(|d| powers.iter().map(move |p| d * p))
            .collect();
    }
    Ok(divisors)
}

/// Perfect: σ*(x) = (1 − ω)·x exactly.
pub fn is_perfect(x: &EisensteinInt) -> Result<bool> {
    is_perfect_with(x, &Effort::default())
}

pub fn is_perfect_with(x: &EisensteinInt, effort: &Effort) -> Result<bool> {
    Ok(sigma_star_with(x, effort)? == &EisensteinInt::one_minus_omega() * x)
}

/// Norm-perfect: N(σ*(x)) = 3·N(x).
pub fn is_norm_perfect(x: &EisensteinInt) -> Result<bool> {
    is_norm_perfect_with(x, &Effort::default())
}

pub fn is_norm_perfect_with(x: &EisensteinInt, effort: &Effort) -> Result<bool> {
    Ok(sigma_star_with(x, effort)?.norm() == x.norm() * BigUint::from(3u32))
}

/// The witness produced when an odd element has the conjectured
/// odd-norm-perfect shape π^k·γ³.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureWitness {
    pub pi: EisensteinInt,
    pub k: u32,
    pub gamma: EisensteinInt,
}

/// Structural check of the odd-norm-perfect shape: exactly one prime π with
/// exponent k ≡ 2 (mod 3), every other exponent ≡ 0 (mod 3), π odd, and the
/// cube root γ of the rest odd and coprime to π. A unit γ is admitted.
///
/// The input must be odd; the shape is not defined for even elements.
pub fn matches_odd_conjecture(x: &EisensteinInt) -> Result<Option<ConjectureWitness>> {
    matches_odd_conjecture_with(x, &Effort::default())
}

pub fn matches_odd_conjecture_with(
    x: &EisensteinInt,
    effort: &Effort,
) -> Result<Option<ConjectureWitness>> {
    if x.is_even() {
        return Err(Error::EvenInput(x.clone()));
    }
    let factorization = factor_with(x, effort)?;
    let mut special: Option<(EisensteinInt, u32)> = None;
    let mut gamma = EisensteinInt::one();
    for entry in &factorization.factors {
        match entry.exp % 3 {
            2 => {
                if special.is_some() {
                    return Ok(None);
                }
                special = Some((entry.prime.clone(), entry.exp));
            }
            0 => gamma = &gamma * &entry.prime.pow(entry.exp as u64 / 3),
            _ => return Ok(None),
        }
    }
    let Some((pi, k)) = special else {
        return Ok(None);
    };
    if pi.is_even() || gamma.is_even() {
        return Ok(None);
    }
    if !pi.gcd(&gamma).expect("pi is nonzero").is_unit() {
        return Ok(None);
    }
    Ok(Some(ConjectureWitness { pi, k, gamma }))
}

/// The verdict bundle for one element: σ*, norms, and both perfection
/// predicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorReport {
    pub subject: EisensteinInt,
    pub sigma_star: EisensteinInt,
    #[serde(with = "crate::serde_dec")]
    pub norm_subject: BigUint,
    #[serde(with = "crate::serde_dec")]
    pub norm_sigma: BigUint,
    #[serde(rename = "perfect")]
    pub is_perfect: bool,
    #[serde(rename = "norm_perfect")]
    pub is_norm_perfect: bool,
}

pub fn divisor_report(x: &EisensteinInt) -> Result<DivisorReport> {
    divisor_report_with(x, &Effort::default())
}

pub fn divisor_report_with(x: &EisensteinInt, effort: &Effort) -> Result<DivisorReport> {
    let sigma = sigma_star_with(x, effort)?;
    let norm_subject = x.norm();
    let norm_sigma = sigma.norm();
    let is_perfect = sigma == &EisensteinInt::one_minus_omega() * x;
    let is_norm_perfect = norm_sigma == &norm_subject * BigUint::from(3u32);
    Ok(DivisorReport {
        subject: x.clone(),
        sigma_star: sigma,
        norm_subject,
        norm_sigma,
        is_perfect,
        is_norm_perfect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::Unit;

    fn eis(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    fn sum(divisors: &[EisensteinInt]) -> EisensteinInt {
        divisors
            .iter()
            .fold(EisensteinInt::zero(), |acc, d| &acc + d)
    }

    #[test]
    fn rational_sigma_examples() {
        // 496 is perfect: σ(496) = 992
        assert_eq!(
            rational_sigma(&BigUint::from(496u32)).unwrap(),
            BigUint::from(992u32)
        );
        assert_eq!(
            rational_sigma(&BigUint::from(7u32)).unwrap(),
            BigUint::from(8u32)
        );
        assert_eq!(rational_sigma(&BigUint::one()).unwrap(), BigUint::one());
    }

    #[test]
    fn rational_sigma_matches_direct_summation() {
        for n in 1u32..=2000 {
            let direct: u32 = (1..=n).filter(|d| n % d == 0).sum();
            assert_eq!(
                rational_sigma(&BigUint::from(n)).unwrap(),
                BigUint::from(direct),
                "mismatch at n = {n}"
            );
        }
    }

    #[test]
    fn sigma_star_examples() {
        // inert prime: 1 + 2
        assert_eq!(sigma_star(&eis(2, 0)).unwrap(), eis(3, 0));
        // prime input: 1 + (1 - ω)
        assert_eq!(sigma_star(&eis(1, -1)).unwrap(), eis(2, -1));
        // (1-ω)^10: geometric series ((1-ω)^11 - 1)/(-ω)
        assert_eq!(sigma_star(&eis(1, -1).pow(10)).unwrap(), eis(242, 485));
    }

    #[test]
    fn sigma_star_of_units_is_one() {
        for u in Unit::ALL {
            assert_eq!(sigma_star(&u.to_int()).unwrap(), EisensteinInt::one());
        }
    }

    #[test]
    fn sigma_star_rejects_zero() {
        assert!(matches!(
            sigma_star(&eis(0, 0)),
            Err(Error::ZeroInput("factor"))
        ));
    }

    #[test]
    fn canonical_divisor_examples() {
        assert_eq!(
            canonical_divisors(&eis(3, 0)).unwrap(),
            vec![eis(1, 0), eis(1, -1), eis(0, -3)]
        );
        assert_eq!(canonical_divisors(&eis(1, 1)).unwrap(), vec![eis(1, 0)]);
        // M_3 = ω² · 2 · (3 + ω): exponent pattern (1, 1) gives 4 divisors
        let divisors = canonical_divisors(&eis(-4, -6)).unwrap();
        assert_eq!(
            divisors,
            vec![eis(1, 0), eis(3, 1), eis(2, 0), eis(6, 2)]
        );
    }

    #[test]
    fn sigma_star_equals_divisor_sum_on_samples() {
        for (a, b) in [(3, 0), (-4, -6), (486, 243), (12, 5), (-9, 3), (50, 0)] {
            let x = eis(a, b);
            assert_eq!(
                sigma_star(&x).unwrap(),
                sum(&canonical_divisors(&x).unwrap()),
                "divisor-sum oracle failed at {x:?}"
            );
        }
    }

    #[test]
    fn perfect_examples() {
        assert!(!is_perfect(&eis(1, 0)).unwrap());
        // σ*(2) = 3 but (1-ω)·2 = 2-2ω
        assert!(!is_perfect(&eis(2, 0)).unwrap());
    }

    #[test]
    fn norm_perfect_examples() {
        // N(σ*(2)) = 9, 3·N(2) = 12
        assert!(!is_norm_perfect(&eis(2, 0)).unwrap());
        for u in Unit::ALL {
            assert!(!is_norm_perfect(&u.to_int()).unwrap());
        }
        // the Euclid-form element for k = 11
        let alpha = &eis(1, -1).pow(10) * &eis(485, 243);
        assert!(is_norm_perfect(&alpha).unwrap());
        assert!(alpha.is_even());
    }

    #[test]
    fn conjecture_examples() {
        let pi = eis(3, 2);

        let x = pi.pow(2);
        let witness = matches_odd_conjecture(&x).unwrap().unwrap();
        assert_eq!(witness.pi, pi);
        assert_eq!(witness.k, 2);
        assert_eq!(witness.gamma, eis(1, 0));

        // a second prime with exponent not divisible by 3
        let x = &eis(2, 0) * &pi.pow(2);
        assert!(matches_odd_conjecture(&x).unwrap().is_none());

        // cube times k ≡ 2 power
        let x = &eis(2, 0).pow(3) * &pi.pow(2);
        let witness = matches_odd_conjecture(&x).unwrap().unwrap();
        assert_eq!(witness.pi, pi);
        assert_eq!(witness.k, 2);
        assert_eq!(witness.gamma, eis(2, 0));
    }

    #[test]
    fn conjecture_rejects_even_inputs() {
        assert!(matches!(
            matches_odd_conjecture(&eis(3, 0)),
            Err(Error::EvenInput(_))
        ));
    }

    #[test]
    fn conjecture_without_special_prime_is_false() {
        // all exponents ≡ 0 (mod 3)
        let x = eis(2, 0).pow(3);
        assert!(matches_odd_conjecture(&x).unwrap().is_none());
        // exponent 1
        assert!(matches_odd_conjecture(&eis(3, 1)).unwrap().is_none());
    }

    #[test]
    fn divisor_report_json_schema() {
        let report = divisor_report(&eis(2, 0)).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            r#"{"subject":"2","sigma_star":"3","norm_subject":"4","norm_sigma":"9","perfect":false,"norm_perfect":false}"#
        );
        let back: DivisorReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn report_perfect_implies_norm_perfect() {
        for (a, b) in [(1, 0), (2, 0), (3, 0), (485, 243), (-4, -6)] {
            let report = divisor_report(&eis(a, b)).unwrap();
            assert!(!report.is_perfect || report.is_norm_perfect);
        }
    }
}
