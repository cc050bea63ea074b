//! Rational-integer primality testing and factorization.
//!
//! These routines back the Eisenstein-level prime classification: norms are
//! factored over ℤ and split back into Eisenstein primes. Everything here is
//! deterministic — fixed witness bases, fixed rho constants — so runs are
//! reproducible.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Upper bound (exclusive) of the trial-division sieve.
pub(crate) const TRIAL_DIVISION_LIMIT: u32 = 1_000_000;

/// Bound on rational-factorization work, passed per call rather than held as
/// global state. The budget counts Pollard-rho squaring steps across the
/// whole factorization of one input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Effort {
    pub max_rho_iterations: u64,
}

impl Default for Effort {
    fn default() -> Self {
        Effort {
            max_rho_iterations: 4_000_000,
        }
    }
}

impl Effort {
    pub fn new(max_rho_iterations: u64) -> Self {
        Effort { max_rho_iterations }
    }
}

/// All rational primes below [`TRIAL_DIVISION_LIMIT`], sieved once.
pub(crate) fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; limit];
        let mut primes = Vec::with_capacity(80_000);
        for i in 2..limit {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j < limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Deterministic primality test.
///
/// Trial division decides everything below 10¹². Above that, the first 13
/// prime bases are a published deterministic Miller-Rabin set up to
/// 3.3·10²⁴ (anything at most 81 bits); larger inputs additionally run
/// twelve more strong-probable-prime rounds and a strong Lucas test.
pub fn is_rational_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u32) {
        return false;
    }
    for &p in small_primes() {
        let p64 = p as u64;
        if BigUint::from(p64 * p64) > *n {
            return true;
        }
        if (n % p).is_zero() {
            return *n == BigUint::from(p);
        }
    }

    let (d, s) = decompose_pow2(n);
    const DETERMINISTIC_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for base in DETERMINISTIC_BASES {
        if !strong_probable_prime(n, base, &d, s) {
            return false;
        }
    }
    if n.bits() <= 81 {
        return true;
    }

    const EXTRA_BASES: [u64; 12] = [43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
    for base in EXTRA_BASES {
        if !strong_probable_prime(n, base, &d, s) {
            return false;
        }
    }
    if perfect_square_root(n).is_some() {
        return false;
    }
    strong_lucas_probable_prime(n)
}

/// Factor `n ≥ 1` into `(prime, exponent)` pairs, primes ascending.
///
/// Trial division below 10⁶ first; remaining cofactors are split with
/// Pollard-Brent rho under the iteration budget in `effort`. Exhausting the
/// budget reports [`Error::FactorEffortExceeded`], which is an effort
/// statement, not a mathematical one.
pub fn factor_rational(n: &BigUint, effort: &Effort) -> Result<Vec<(BigUint, u32)>> {
    assert!(!n.is_zero(), "factor_rational requires n >= 1");
    let mut factors: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut n = n.clone();
    let one = BigUint::one();

    let mut trial_complete = n == one;
    for &p in small_primes() {
        let p64 = p as u64;
        if BigUint::from(p64 * p64) > n {
            trial_complete = true;
            break;
        }
        if (&n % p).is_zero() {
            let p_big = BigUint::from(p);
            let mut e = 0u32;
            while (&n % p).is_zero() {
                n /= &p_big;
                e += 1;
            }
            factors.insert(p_big, e);
        }
    }

    if n > one {
        if trial_complete {
            // no factor up to sqrt(n) remains, so n itself is prime
            *factors.entry(n).or_insert(0) += 1;
        } else {
            let mut budget = effort.max_rho_iterations;
            let mut pending = vec![n];
            while let Some(m) = pending.pop() {
                if is_rational_prime(&m) {
                    *factors.entry(m).or_insert(0) += 1;
                    continue;
                }
                match pollard_brent(&m, &mut budget) {
                    Some(d) => {
                        pending.push(&m / &d);
                        pending.push(d);
                    }
                    None => {
                        return Err(Error::FactorEffortExceeded {
                            effort: effort.max_rho_iterations,
                        })
                    }
                }
            }
        }
    }

    Ok(factors.into_iter().collect())
}

/// `Some(r)` with `r² = n`, when n is a perfect square.
pub(crate) fn perfect_square_root(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

fn decompose_pow2(n: &BigUint) -> (BigUint, u64) {
    // n - 1 = d * 2^s with d odd
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    (&n_minus_1 >> s, s)
}

fn strong_probable_prime(n: &BigUint, base: u64, d: &BigUint, s: u64) -> bool {
    let n_minus_1 = n - 1u32;
    let mut x = BigUint::from(base).modpow(d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Strong Lucas probable-prime test with Selfridge parameter selection.
/// Caller guarantees n is odd, has no small factors, and is not a square.
fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    let n_int = BigInt::from(n.clone());

    // First D in 5, -7, 9, -11, ... with Jacobi(D|n) = -1.
    let mut d_abs: i64 = 5;
    let mut negative = false;
    let d = loop {
        let candidate = if negative {
            BigInt::from(-d_abs)
        } else {
            BigInt::from(d_abs)
        };
        match jacobi(&candidate, &n_int) {
            0 => return false, // gcd(D, n) > 1 and n > |D|, so n is composite
            -1 => break candidate,
            _ => {}
        }
        negative = !negative;
        d_abs += 2;
    };
    // P = 1, Q = (1 - D) / 4
    let q = (BigInt::one() - &d) / BigInt::from(4);

    let delta = n + 1u32;
    let s = delta.trailing_zeros().expect("n is odd");
    let odd_part = &delta >> s;

    let mut u = BigInt::one();
    let mut v = BigInt::one();
    let mut qk = q.mod_floor(&n_int);
    let two = BigInt::from(2);
    for i in (0..odd_part.bits() - 1).rev() {
        u = (&u * &v).mod_floor(&n_int);
        v = (&v * &v - &two * &qk).mod_floor(&n_int);
        qk = (&qk * &qk).mod_floor(&n_int);
        if odd_part.bit(i) {
            let next_u = half_mod(&(&u + &v), &n_int);
            let next_v = half_mod(&(&d * &u + &v), &n_int);
            u = next_u;
            v = next_v;
            qk = (&qk * &q).mod_floor(&n_int);
        }
    }

    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &two * &qk).mod_floor(&n_int);
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk).mod_floor(&n_int);
    }
    false
}

/// `x/2 mod n` for odd n.
fn half_mod(x: &BigInt, n: &BigInt) -> BigInt {
    let x = x.mod_floor(n);
    if x.is_even() {
        x >> 1
    } else {
        (x + n) >> 1
    }
}

/// Jacobi symbol (a|n) for odd positive n.
fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    debug_assert!(n.is_odd() && n > &BigInt::zero());
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let n_mod_8 = (&n % 8u32).to_u8().expect("residue fits");
            if n_mod_8 == 3 || n_mod_8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigInt::from(3) && (&n % 4u32) == BigInt::from(3) {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Brent's variant of Pollard rho with batched gcds and fixed constants.
/// Returns a nontrivial factor, or None once `budget` reaches zero.
fn pollard_brent(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    const BATCH: u64 = 128;
    let one = BigUint::one();
    for c in 1u64..64 {
        let c = BigUint::from(c);
        let step = |y: &BigUint| (y * y + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
                y = step(&y);
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    if *budget == 0 {
                        return None;
                    }
                    *budget -= 1;
                    y = step(&y);
                    q = (&q * abs_diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r <<= 1;
        }
        if g == *n {
            // the batched gcd jumped past the factor; replay stepwise
            g = one.clone();
            while g.is_one() {
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
                ys = step(&ys);
                g = abs_diff(&x, &ys).gcd(n);
            }
        }
        if g != *n {
            return Some(g);
        }
        // degenerate cycle for this constant; try the next
    }
    None
}

fn abs_diff(x: &BigUint, y: &BigUint) -> BigUint {
    if x >= y {
        x - y
    } else {
        y - x
    }
}

/// A square root of `a` modulo an odd prime `p`, if one exists. Returns the
/// smaller of the two roots, for reproducibility.
pub(crate) fn sqrt_mod_prime(a: &BigUint, p: &BigUint) -> Option<BigUint> {
    let a = a % p;
    if a.is_zero() {
        return Some(BigUint::zero());
    }
    let one = BigUint::one();
    let half = (p - &one) >> 1;
    if a.modpow(&half, p) != one {
        return None;
    }
    let root = if (p % 4u32) == BigUint::from(3u32) {
        a.modpow(&((p + &one) >> 2), p)
    } else {
        tonelli_shanks(&a, p)
    };
    let other = p - &root;
    Some(root.min(other))
}

/// Tonelli-Shanks for p ≡ 1 (mod 4); `a` must be a quadratic residue.
fn tonelli_shanks(a: &BigUint, p: &BigUint) -> BigUint {
    let one = BigUint::one();
    let p_minus_1 = p - &one;
    let s = p_minus_1.trailing_zeros().expect("p is odd");
    let q = &p_minus_1 >> s;

    let half = &p_minus_1 >> 1;
    let mut z = BigUint::from(2u32);
    while z.modpow(&half, p) == one {
        z += 1u32;
    }

    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0u64;
        let mut t_pow = t.clone();
        while !t_pow.is_one() {
            t_pow = (&t_pow * &t_pow) % p;
            i += 1;
        }
        let b = c.modpow(&(one.clone() << (m - i - 1)), p);
        r = (&r * &b) % p;
        c = (&b * &b) % p;
        t = (&t * &c) % p;
        m = i;
    }
    r
}
