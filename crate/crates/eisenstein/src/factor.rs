//! Primality and unique factorization over ℤ[ω].
//!
//! Factorizations are expressed as a unit times canonical primes. The
//! canonical prime set is:
//!
//! * 1 − ω itself for the ramified prime over 3 (deliberately *not* its
//!   in-sector associate 2 + ω: the sum-of-divisors computations for even
//!   elements are anchored to 1 − ω, and swapping in 2 + ω would change σ*),
//! * the in-sector element (`a > b ≥ 0`) of each conjugate class of norm a
//!   rational prime ≡ 1 (mod 3),
//! * `q + 0ω` for each inert rational prime q ≡ 2 (mod 3).

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::{EisensteinInt, Unit};
use crate::primes::{
    factor_rational, is_rational_prime, perfect_square_root, sqrt_mod_prime, Effort,
};

/// One `prime^exp` entry of a factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub prime: EisensteinInt,
    pub exp: u32,
}

/// A unit times a multiset of canonical primes, sorted by (norm, a, b).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFactorization {
    pub unit: Unit,
    pub factors: Vec<FactorEntry>,
}

impl PrimeFactorization {
    /// Recompose `unit · ∏ primeᵉ`, reproducing the factored element exactly.
    pub fn value(&self) -> EisensteinInt {
        let mut out = self.unit.to_int();
        for entry in &self.factors {
            out = &out * &entry.prime.pow(entry.exp as u64);
        }
        out
    }

    /// `∏ norm(prime)ᵉ`, the norm of the factored element.
    pub fn norm(&self) -> BigUint {
        let mut out = BigUint::one();
        for entry in &self.factors {
            out *= entry.prime.norm().pow(entry.exp);
        }
        out
    }
}

impl std::fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.unit)?;
        for entry in &self.factors {
            write!(f, " * ({})", entry.prime)?;
            if entry.exp > 1 {
                write!(f, "^{}", entry.exp)?;
            }
        }
        Ok(())
    }
}

/// Factor the rational prime `p` as an element of ℤ[ω]: ramified at 3,
/// split into two non-associate conjugate primes when p ≡ 1 (mod 3), inert
/// when p ≡ 2 (mod 3).
pub fn split_rational_prime(p: &BigUint) -> Result<PrimeFactorization> {
    if !is_rational_prime(p) {
        return Err(Error::CompositeInput(p.clone()));
    }
    if *p == BigUint::from(3u32) {
        // 3 = (1+ω) · (1−ω)²
        return Ok(PrimeFactorization {
            unit: Unit::NegOmegaSq,
            factors: vec![FactorEntry {
                prime: EisensteinInt::one_minus_omega(),
                exp: 2,
            }],
        });
    }
    let p_int = BigInt::from(p.clone());
    if (p % 3u32) == BigUint::from(2u32) {
        return Ok(PrimeFactorization {
            unit: Unit::One,
            factors: vec![FactorEntry {
                prime: EisensteinInt::new(p_int, 0),
                exp: 1,
            }],
        });
    }

    let (pi, pi_conj) = split_prime_conjugates(p);
    let product = &pi * &pi_conj;
    let unit_elem = EisensteinInt::new(p_int, 0)
        .exact_div(&product)
        .expect("p equals its conjugate prime product up to a unit");
    let unit = unit_elem
        .as_unit()
        .expect("quotient of p by its prime product is a unit");
    Ok(PrimeFactorization {
        unit,
        factors: vec![
            FactorEntry { prime: pi, exp: 1 },
            FactorEntry {
                prime: pi_conj,
                exp: 1,
            },
        ],
    })
}

/// The two canonical conjugate primes of norm `p`, for p ≡ 1 (mod 3),
/// ordered by (a, b).
///
/// A square root t of −3 modulo p turns the identity √−3 = 1 + 2ω into the
/// lattice witness (1 − t) + 2ω, whose gcd with p is a prime of norm p.
pub(crate) fn split_prime_conjugates(p: &BigUint) -> (EisensteinInt, EisensteinInt) {
    debug_assert_eq!((p % 3u32).to_u32(), Some(1));
    // p ≥ 7 here, so −3 mod p is p − 3
    let minus_three = p - BigUint::from(3u32);
    let t = sqrt_mod_prime(&minus_three, p).expect("-3 is a quadratic residue for p = 1 mod 3");
    let witness = EisensteinInt::new(BigInt::one() - BigInt::from(t), 2);
    let p_elem = EisensteinInt::new(BigInt::from(p.clone()), 0);
    let pi = p_elem.gcd(&witness).expect("p is nonzero");
    assert_eq!(pi.norm(), *p, "gcd with the root witness has norm p");
    let pi_conj = pi
        .conjugate()
        .canonicalize()
        .expect("conjugate of a prime is nonzero")
        .1;
    if (&pi.a, &pi.b) <= (&pi_conj.a, &pi_conj.b) {
        (pi, pi_conj)
    } else {
        (pi_conj, pi)
    }
}

/// Primality in ℤ[ω]: true when the norm is a rational prime, or when the
/// element is an associate of an inert rational prime q ≡ 2 (mod 3).
pub fn is_prime(x: &EisensteinInt) -> bool {
    let n = x.norm();
    if n <= BigUint::one() {
        return false;
    }
    if is_rational_prime(&n) {
        return true;
    }
    if let Some(q) = perfect_square_root(&n) {
        if (&q % 3u32) == BigUint::from(2u32) && is_rational_prime(&q) {
            let canonical = x.canonicalize().expect("norm > 1 means x is nonzero").1;
            return canonical == EisensteinInt::new(BigInt::from(q), 0);
        }
    }
    false
}

/// Factor a nonzero element into a unit times canonical primes, with the
/// default factorization effort.
pub fn factor(x: &EisensteinInt) -> Result<PrimeFactorization> {
    factor_with(x, &Effort::default())
}

/// Factor under an explicit effort bound.
///
/// The norm is factored over ℤ, each rational prime is split into canonical
/// Eisenstein primes, and exponents are fixed by repeated exact division.
/// The residue left after dividing everything out must be a unit.
pub fn factor_with(x: &EisensteinInt, effort: &Effort) -> Result<PrimeFactorization> {
    let n = x.norm();
    if n.is_zero() {
        return Err(Error::ZeroInput("factor"));
    }
    if n.is_one() {
        return Ok(PrimeFactorization {
            unit: x.as_unit().expect("norm 1 elements are units"),
            factors: Vec::new(),
        });
    }

    let rational = factor_rational(&n, effort)?;
    let mut residual = x.clone();
    let mut entries: Vec<FactorEntry> = Vec::new();
    let three = BigUint::from(3u32);

    for (p, m) in rational {
        if p == three {
            // v_3(norm) counts the power of 1 − ω exactly
            let prime = EisensteinInt::one_minus_omega();
            let e = divide_out(&mut residual, &prime);
            debug_assert_eq!(e, m);
            entries.push(FactorEntry { prime, exp: e });
        } else if (&p % 3u32) == BigUint::from(2u32) {
            debug_assert_eq!(m % 2, 0, "inert primes enter the norm squared");
            let prime = EisensteinInt::new(BigInt::from(p), 0);
            let e = divide_out(&mut residual, &prime);
            debug_assert_eq!(e, m / 2);
            entries.push(FactorEntry { prime, exp: e });
        } else {
            let (pi, pi_conj) = split_prime_conjugates(&p);
            let mut total = 0;
            for prime in [pi, pi_conj] {
                let e = divide_out(&mut residual, &prime);
                total += e;
                if e > 0 {
                    entries.push(FactorEntry { prime, exp: e });
                }
            }
            debug_assert_eq!(total, m);
        }
    }

    let unit = residual
        .as_unit()
        .expect("all primes divided out, the residual must be a unit");
    entries.sort_by(|x, y| {
        (x.prime.norm(), &x.prime.a, &x.prime.b).cmp(&(y.prime.norm(), &y.prime.a, &y.prime.b))
    });
    Ok(PrimeFactorization {
        unit,
        factors: entries,
    })
}

/// Divide `prime` out of `x` as many times as it divides, returning the count.
fn divide_out(x: &mut EisensteinInt, prime: &EisensteinInt) -> u32 {
    let mut e = 0;
    loop {
        let (q, r) = x.divmod(prime).expect("prime is nonzero");
        if !r.is_zero() {
            return e;
        }
        *x = q;
        e += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eis(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn rational_prime_examples() {
        assert!(is_rational_prime(&BigUint::from(176419u32)));
        assert!(!is_rational_prime(&BigUint::from(2047u32)));
        assert!(!is_rational_prime(&BigUint::one()));
    }

    #[test]
    fn split_three_ramifies() {
        let f = split_rational_prime(&BigUint::from(3u32)).unwrap();
        assert_eq!(f.unit, Unit::NegOmegaSq);
        assert_eq!(
            f.factors,
            vec![FactorEntry {
                prime: eis(1, -1),
                exp: 2
            }]
        );
        assert_eq!(f.value(), eis(3, 0));
    }

    #[test]
    fn split_seven() {
        let f = split_rational_prime(&BigUint::from(7u32)).unwrap();
        assert_eq!(f.unit, Unit::NegOmega);
        assert_eq!(
            f.factors,
            vec![
                FactorEntry {
                    prime: eis(3, 1),
                    exp: 1
                },
                FactorEntry {
                    prime: eis(3, 2),
                    exp: 1
                },
            ]
        );
        assert_eq!(f.value(), eis(7, 0));
    }

    #[test]
    fn split_five_is_inert() {
        let f = split_rational_prime(&BigUint::from(5u32)).unwrap();
        assert_eq!(f.unit, Unit::One);
        assert_eq!(
            f.factors,
            vec![FactorEntry {
                prime: eis(5, 0),
                exp: 1
            }]
        );
    }

    #[test]
    fn split_rejects_composites() {
        assert!(matches!(
            split_rational_prime(&BigUint::from(6u32)),
            Err(Error::CompositeInput(_))
        ));
    }

    #[test]
    fn is_prime_examples() {
        assert!(is_prime(&eis(1, -1)));
        assert!(is_prime(&eis(-1, -3))); // M_2, norm 7
        assert!(!is_prime(&eis(-4, -6))); // M_3, norm 28
        assert!(!is_prime(&eis(0, 0)));
        assert!(!is_prime(&eis(1, 1)));
        // inert prime and its associates
        assert!(is_prime(&eis(2, 0)));
        for assoc in eis(2, 0).associates() {
            assert!(is_prime(&assoc));
        }
        // norm 4 without being an associate of 2 does not exist; norm 25
        // splits as (5,0) times a unit only
        assert!(is_prime(&eis(0, 5)));
    }

    #[test]
    fn factor_three() {
        let f = factor(&eis(3, 0)).unwrap();
        assert_eq!(f.unit, Unit::NegOmegaSq);
        assert_eq!(
            f.factors,
            vec![FactorEntry {
                prime: eis(1, -1),
                exp: 2
            }]
        );
    }

    #[test]
    fn factor_m3() {
        // M_3 = -4 - 6ω = ω² · 2 · (3 + ω); norm 28 = 4 · 7
        let f = factor(&eis(-4, -6)).unwrap();
        assert_eq!(f.unit, Unit::OmegaSq);
        assert_eq!(
            f.factors,
            vec![
                FactorEntry {
                    prime: eis(2, 0),
                    exp: 1
                },
                FactorEntry {
                    prime: eis(3, 1),
                    exp: 1
                },
            ]
        );
        assert_eq!(f.norm(), BigUint::from(28u32));
        assert_eq!(f.value(), eis(-4, -6));
    }

    #[test]
    fn factor_unit() {
        let f = factor(&eis(1, 1)).unwrap();
        assert_eq!(f.unit, Unit::NegOmegaSq);
        assert!(f.factors.is_empty());
        assert_eq!(f.value(), eis(1, 1));
    }

    #[test]
    fn factor_zero_is_an_error() {
        assert!(matches!(
            factor(&eis(0, 0)),
            Err(Error::ZeroInput("factor"))
        ));
    }

    #[test]
    fn factor_sorts_by_norm_then_coefficients() {
        // 21 = 3 · 7: primes of norm 3 and 7
        let f = factor(&eis(21, 0)).unwrap();
        let norms: Vec<BigUint> = f.factors.iter().map(|e| e.prime.norm()).collect();
        let mut sorted = norms.clone();
        sorted.sort();
        assert_eq!(norms, sorted);
        assert_eq!(f.factors[0].prime, eis(1, -1));
        assert_eq!(f.value(), eis(21, 0));
    }

    #[test]
    fn factor_round_trips_on_mixed_inputs() {
        for (a, b) in [
            (486, 243),
            (485, 243),
            (-17, 23),
            (100, 1),
            (0, -3),
            (63, 0),
            (-50, -50),
            (1, 2),
        ] {
            let x = eis(a, b);
            let f = factor(&x).unwrap();
            assert_eq!(f.value(), x, "round trip failed for {x:?}");
            assert_eq!(f.norm(), x.norm());
            for entry in &f.factors {
                assert!(is_prime(&entry.prime), "{:?} not prime", entry.prime);
                let canonical_ok = entry.prime == eis(1, -1)
                    || entry.prime.is_in_region();
                assert!(canonical_ok, "{:?} not canonical", entry.prime);
            }
        }
    }

    #[test]
    fn only_three_ramifies() {
        // repeated prime factors appear only as powers coming from the input
        // itself, except 3 = unit · (1-ω)²
        let f = factor(&eis(3, 0)).unwrap();
        assert_eq!(f.factors[0].exp, 2);
        for p in [7u32, 13, 5, 11, 2] {
            let f = split_rational_prime(&BigUint::from(p)).unwrap();
            for entry in f.factors {
                assert_eq!(entry.exp, 1, "p = {p} must not ramify");
            }
        }
    }

    #[test]
    fn factorization_json_schema() {
        let f = factor(&eis(3, 0)).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"unit":"1+1w","factors":[{"prime":"1-1w","exp":2}]}"#
        );
        let back: PrimeFactorization = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn display_form() {
        let f = factor(&eis(3, 0)).unwrap();
        assert_eq!(f.to_string(), "1+1w * (1-1w)^2");
        let f = factor(&eis(-4, -6)).unwrap();
        assert_eq!(f.to_string(), "-1-1w * (2) * (3+1w)");
    }
}
