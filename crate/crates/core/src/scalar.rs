//! Exact coefficient arithmetic over `Q` or a prime field `F_p`.
//!
//! Every scalar is tagged with its [`FieldSpec`]; mixing fields is a
//! programming error and panics (the series and polynomial layers check
//! field agreement up front and report [`crate::Error::FieldMismatch`]).
//!
//! Invariants:
//! * rationals are stored reduced to lowest terms with positive denominator
//!   (guaranteed by `BigRational`),
//! * residues are stored in `[0, p)`,
//! * `p` is an odd prime below `2^31`, so products fit in `u64` via `u128`.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field of a computation: the rationals or `F_p` with `p` odd.
///
/// Characteristic 2 is rejected globally: the engine's catalog normal forms
/// and superficial-element searches need `1 ≠ -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

const MAX_MODULUS: u64 = 1 << 31;

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// Validated prime field constructor.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidModulus(p, "characteristic 2 is not supported".into()));
        }
        if p >= MAX_MODULUS {
            return Err(Error::InvalidModulus(p, "modulus must be below 2^31".to_string()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidModulus(p, "not prime".into()));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    /// 0 for the rationals, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(*self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(*self)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        Scalar::from_i64(*self, n)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue(u64),
}

/// An exact field element tagged with its field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldSpec,
    repr: Repr,
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => Scalar { field, repr: Repr::Rational(BigRational::zero()) },
            FieldSpec::PrimeField(_) => Scalar { field, repr: Repr::Residue(0) },
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => Scalar { field, repr: Repr::Rational(BigRational::one()) },
            FieldSpec::PrimeField(_) => Scalar { field, repr: Repr::Residue(1) },
        }
    }

    pub fn from_i64(field: FieldSpec, n: i64) -> Self {
        match field {
            FieldSpec::Rationals => Scalar {
                field,
                repr: Repr::Rational(BigRational::from_integer(BigInt::from(n))),
            },
            FieldSpec::PrimeField(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar { field, repr: Repr::Residue(r) }
            }
        }
    }

    pub fn from_rational(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator(format!("{num}/{den}")));
        }
        Ok(Scalar {
            field: FieldSpec::Rationals,
            repr: Repr::Rational(BigRational::new(num, den)),
        })
    }

    /// Parses `n`, `-n`, or `a/b` in the given field.  In `F_p` the literal
    /// is reduced mod `p`; a denominator divisible by `p` has no inverse and
    /// is reported as [`Error::ZeroDenominator`].
    pub fn parse(field: FieldSpec, text: &str) -> Result<Self> {
        let s = text.trim();
        if s.is_empty() {
            return Err(Error::MalformedScalar(text.into()));
        }
        let (num_str, den_str) = match s.split_once('/') {
            None => (s, None),
            Some((a, b)) => {
                if b.contains('/') {
                    return Err(Error::MalformedScalar(text.into()));
                }
                (a, Some(b))
            }
        };
        let num: BigInt =
            num_str.trim().parse().map_err(|_| Error::MalformedScalar(text.into()))?;
        let den: BigInt = match den_str {
            None => BigInt::one(),
            Some(d) => d.trim().parse().map_err(|_| Error::MalformedScalar(text.into()))?,
        };
        if den.is_zero() {
            return Err(Error::ZeroDenominator(text.into()));
        }
        match field {
            FieldSpec::Rationals => Ok(Scalar {
                field,
                repr: Repr::Rational(BigRational::new(num, den)),
            }),
            FieldSpec::PrimeField(p) => {
                let n = reduce_bigint(&num, p);
                let d = reduce_bigint(&den, p);
                if d == 0 {
                    return Err(Error::ZeroDenominator(text.into()));
                }
                let r = mul_mod(n, mod_inverse(d, p), p);
                Ok(Scalar { field, repr: Repr::Residue(r) })
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue(r) => *r == 1,
        }
    }

    fn expect_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field, other.field,
            "scalar arithmetic across different fields"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.expect_same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => {
                Scalar { field: self.field, repr: Repr::Rational(a + b) }
            }
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.field.characteristic();
                Scalar { field: self.field, repr: Repr::Residue((a + b) % p) }
            }
            _ => unreachable!("repr always matches field"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match &self.repr {
            Repr::Rational(a) => Scalar { field: self.field, repr: Repr::Rational(-a) },
            Repr::Residue(a) => {
                let p = self.field.characteristic();
                Scalar { field: self.field, repr: Repr::Residue(if *a == 0 { 0 } else { p - a }) }
            }
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.expect_same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => {
                Scalar { field: self.field, repr: Repr::Rational(a * b) }
            }
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.field.characteristic();
                Scalar { field: self.field, repr: Repr::Residue(mul_mod(*a, *b, p)) }
            }
            _ => unreachable!("repr always matches field"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.repr {
            Repr::Rational(a) => Scalar { field: self.field, repr: Repr::Rational(a.recip()) },
            Repr::Residue(a) => {
                let p = self.field.characteristic();
                Scalar { field: self.field, repr: Repr::Residue(mod_inverse(*a, p)) }
            }
        })
    }

    /// `self / other`; `None` when `other` is zero.
    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|inv| self.mul(&inv))
    }

    /// Exposes the rational payload; Q-only callers (witness extraction,
    /// the leading-coefficient functional) use this.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            Repr::Residue(_) => None,
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let mut r = n % &p_big;
    if r.is_negative() {
        r += &p_big;
    }
    let (_, digits) = r.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => unreachable!("residue below 2^31"),
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse mod an odd prime via extended Euclid; `a` must be nonzero mod `p`.
fn mod_inverse(a: u64, p: u64) -> u64 {
    debug_assert!(a != 0 && a < p);
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "inverse of non-unit");
    old_s.rem_euclid(p as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Residue(r) => write!(f, "{r}"),
        }
    }
}
