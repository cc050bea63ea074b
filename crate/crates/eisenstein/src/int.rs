//! The ring ℤ[ω] of Eisenstein integers, with ω² = −1 − ω.
//!
//! Elements are stored as coefficient pairs `a + bω` over arbitrary-precision
//! integers. Every `(a, b)` pair is a valid element; equality is
//! coefficient-wise and no normalization happens on construction.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError, Result};

/// An Eisenstein integer `a + bω`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinInt {
    /// Coefficient of 1.
    pub a: BigInt,
    /// Coefficient of ω.
    pub b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EisensteinInt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Self {
        EisensteinInt::new(0, 0)
    }

    pub fn one() -> Self {
        EisensteinInt::new(1, 0)
    }

    pub fn omega() -> Self {
        EisensteinInt::new(0, 1)
    }

    /// 1 − ω, the even prime of minimal norm.
    pub fn one_minus_omega() -> Self {
        EisensteinInt::new(1, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Complex conjugate: `a + bω ↦ (a − b) − bω`, since ω̄ = ω² = −1 − ω.
    pub fn conjugate(&self) -> Self {
        EisensteinInt {
            a: &self.a - &self.b,
            b: -&self.b,
        }
    }

    /// The norm `a² − ab + b²`. Zero only at zero, and never ≡ 2 (mod 3).
    pub fn norm(&self) -> BigUint {
        let n = &self.a * &self.a - &self.a * &self.b + &self.b * &self.b;
        n.to_biguint().expect("norm is nonnegative")
    }

    /// `self^k` by binary exponentiation; `pow(x, 0) = 1` for every x.
    pub fn pow(&self, k: u64) -> Self {
        let mut result = EisensteinInt::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Division with remainder: `self = q·d + r` with `norm(r) < norm(d)`.
    ///
    /// The exact quotient is computed in the fraction field in the (1, ω)
    /// coordinate basis and each coordinate is rounded to the nearest
    /// integer, ties toward −∞. Remainder coordinates then have absolute
    /// value ≤ 1/2, so `norm(r) ≤ (3/4)·norm(d)`. The tie-break makes the
    /// result (and everything built on it, like gcd) reproducible.
    pub fn divmod(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = BigInt::from(d.norm());
        let t = self * &d.conjugate();
        let q = EisensteinInt {
            a: round_nearest_half_down(&t.a, &n),
            b: round_nearest_half_down(&t.b, &n),
        };
        let r = self - &(&q * d);
        Ok((q, r))
    }

    /// Whether `self` divides `x`.
    pub fn divides(&self, x: &Self) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        let (_, r) = x.divmod(self).expect("divisor is nonzero");
        r.is_zero()
    }

    /// The unique quotient `self / d` when `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = self.divmod(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible {
                value: self.clone(),
                divisor: d.clone(),
            })
        }
    }

    /// True exactly when `norm(self) = 1`.
    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Identify `self` as one of the six units, if it is one.
    pub fn as_unit(&self) -> Option<Unit> {
        Unit::from_int(self)
    }

    /// The six associates `self·u`, in the fixed unit order
    /// 1, −1, ω, −ω, 1+ω, −1−ω.
    pub fn associates(&self) -> [Self; 6] {
        Unit::ALL.map(|u| self * &u.to_int())
    }

    /// Whether `self` lies in the canonical sector `a > b ≥ 0`.
    pub fn is_in_region(&self) -> bool {
        self.a > self.b && !self.b.is_negative()
    }

    /// Split a nonzero element as `unit · canonical`, where `canonical` is
    /// the unique associate with `a > b ≥ 0`.
    pub fn canonicalize(&self) -> Result<(Unit, Self)> {
        if self.is_zero() {
            return Err(Error::ZeroInput("canonicalize"));
        }
        for u in Unit::ALL {
            let c = self * &u.to_int();
            if c.is_in_region() {
                return Ok((u.inverse(), c));
            }
        }
        unreachable!("exactly one associate of a nonzero element lies in the canonical sector")
    }

    /// Evenness: divisibility by 1 − ω, equivalently `a + b ≡ 0 (mod 3)`,
    /// equivalently `norm ≡ 0 (mod 3)`.
    pub fn is_even(&self) -> bool {
        (&self.a + &self.b).mod_floor(&BigInt::from(3)).is_zero()
    }

    /// Greatest common divisor, returned as its canonical associate so the
    /// function is single-valued. `gcd(x, 0)` is the canonical associate of
    /// `x`; both arguments zero is an error.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut x = self.clone();
        let mut y = other.clone();
        while !y.is_zero() {
            let (_, r) = x.divmod(&y)?;
            x = y;
            y = r;
        }
        Ok(x.canonicalize()?.1)
    }
}

/// Nearest integer to `t / n` for `n > 0`, ties toward −∞.
fn round_nearest_half_down(t: &BigInt, n: &BigInt) -> BigInt {
    let two_t: BigInt = t << 1;
    let two_n: BigInt = n << 1;
    (two_t + n - BigInt::one()).div_floor(&two_n)
}

impl std::ops::Add for &EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl std::ops::Sub for &EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl std::ops::Mul for &EisensteinInt {
    type Output = EisensteinInt;
    /// `(a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω`.
    fn mul(self, rhs: &EisensteinInt) -> EisensteinInt {
        let bd = &self.b * &rhs.b;
        EisensteinInt {
            a: &self.a * &rhs.a - &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a - &bd,
        }
    }
}

impl std::ops::Neg for &EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for EisensteinInt {
            type Output = EisensteinInt;
            fn $method(self, rhs: EisensteinInt) -> EisensteinInt {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&EisensteinInt> for EisensteinInt {
            type Output = EisensteinInt;
            fn $method(self, rhs: &EisensteinInt) -> EisensteinInt {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl std::ops::Neg for EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        -&self
    }
}

/// The six units of ℤ[ω], in the fixed order 1, −1, ω, −ω, 1+ω, −1−ω.
///
/// Note 1+ω = −ω² and −1−ω = ω².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    One,
    NegOne,
    Omega,
    NegOmega,
    /// 1 + ω
    NegOmegaSq,
    /// −1 − ω
    OmegaSq,
}

impl Unit {
    pub const ALL: [Unit; 6] = [
        Unit::One,
        Unit::NegOne,
        Unit::Omega,
        Unit::NegOmega,
        Unit::NegOmegaSq,
        Unit::OmegaSq,
    ];

    pub fn to_int(self) -> EisensteinInt {
        match self {
            Unit::One => EisensteinInt::new(1, 0),
            Unit::NegOne => EisensteinInt::new(-1, 0),
            Unit::Omega => EisensteinInt::new(0, 1),
            Unit::NegOmega => EisensteinInt::new(0, -1),
            Unit::NegOmegaSq => EisensteinInt::new(1, 1),
            Unit::OmegaSq => EisensteinInt::new(-1, -1),
        }
    }

    pub fn from_int(x: &EisensteinInt) -> Option<Unit> {
        Unit::ALL.into_iter().find(|u| u.to_int() == *x)
    }

    pub fn inverse(self) -> Unit {
        match self {
            Unit::One => Unit::One,
            Unit::NegOne => Unit::NegOne,
            Unit::Omega => Unit::OmegaSq,
            Unit::NegOmega => Unit::NegOmegaSq,
            Unit::NegOmegaSq => Unit::NegOmega,
            Unit::OmegaSq => Unit::Omega,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_int().fmt(f)
    }
}

impl Serialize for Unit {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Unit {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let x = EisensteinInt::deserialize(deserializer)?;
        Unit::from_int(&x).ok_or_else(|| de::Error::custom(format!("{x} is not a unit")))
    }
}

// Text format: `<A>` or `<A><SIGN><B>w`, with A omitted when it is zero and
// B nonzero. Examples: `7`, `-2w`, `486+243w`, `-1-3w`.

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}w", self.b)
        } else {
            write!(f, "{}{:+}w", self.a, self.b)
        }
    }
}

impl fmt::Debug for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Eis({self})")
    }
}

impl FromStr for EisensteinInt {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let bytes = s.as_bytes();
        let mut pos = 0;

        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };

        // Sign then digit run, whitespace allowed between them.
        let parse_signed = |pos: &mut usize| -> std::result::Result<BigInt, ParseError> {
            let mut negative = false;
            if *pos < bytes.len() && (bytes[*pos] == b'+' || bytes[*pos] == b'-') {
                negative = bytes[*pos] == b'-';
                *pos += 1;
                skip_ws(pos);
            }
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if *pos == start {
                return Err(ParseError::new(start, "expected digit"));
            }
            let digits = &s[start..*pos];
            let magnitude: BigInt = digits.parse().expect("digit run is a valid integer");
            Ok(if negative { -magnitude } else { magnitude })
        };

        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(ParseError::new(pos, "empty input"));
        }
        let first = parse_signed(&mut pos)?;

        // `<B>w` form: the first number was the ω coefficient.
        if pos < bytes.len() && bytes[pos] == b'w' {
            pos += 1;
            skip_ws(&mut pos);
            if pos != bytes.len() {
                return Err(ParseError::new(pos, "unexpected trailing input"));
            }
            return Ok(EisensteinInt { a: BigInt::zero(), b: first });
        }

        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Ok(EisensteinInt { a: first, b: BigInt::zero() });
        }
        if bytes[pos] != b'+' && bytes[pos] != b'-' {
            return Err(ParseError::new(
                pos,
                format!("unexpected character '{}'", &s[pos..].chars().next().unwrap()),
            ));
        }
        let second = parse_signed(&mut pos)?;
        if pos == bytes.len() || bytes[pos] != b'w' {
            return Err(ParseError::new(pos, "expected 'w' after the ω coefficient"));
        }
        pos += 1;
        skip_ws(&mut pos);
        if pos != bytes.len() {
            return Err(ParseError::new(pos, "unexpected trailing input"));
        }
        Ok(EisensteinInt { a: first, b: second })
    }
}

impl Serialize for EisensteinInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EisensteinInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}
