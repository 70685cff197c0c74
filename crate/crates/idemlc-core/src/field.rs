//! Exact scalar arithmetic over the rationals and over prime fields.
//!
//! A [`Scalar`] carries its field along with a canonical value: a reduced
//! fraction with positive denominator over `Q`, or a residue in `[0, p)`
//! over `F_p`. Equality is structural thanks to the canonical forms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field: `Q` or `F_p` for a prime `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// Builds `F_p`, rejecting composite moduli.
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// 0 for the rationals, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// `None` marks an infinite field.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.scalar_from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.scalar_from_i64(1)
    }

    pub fn scalar_from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar {
                field: *self,
                repr: Repr::Rat(BigRational::from_integer(BigInt::from(v))),
            },
            FieldSpec::PrimeField(p) => {
                let r = v.rem_euclid(*p as i64) as u64;
                Scalar {
                    field: *self,
                    repr: Repr::Mod(r % *p),
                }
            }
        }
    }

    /// Parses the wire format: `a` or `a/b` over `Q`, a decimal residue over `F_p`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            FieldSpec::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let num = BigInt::from_str(num)
                    .map_err(|_| Error::InvalidInput(format!("bad rational `{s}`")))?;
                let den = BigInt::from_str(den)
                    .map_err(|_| Error::InvalidInput(format!("bad rational `{s}`")))?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar {
                    field: *self,
                    repr: Repr::Rat(BigRational::new(num, den)),
                })
            }
            FieldSpec::PrimeField(p) => {
                let v = BigInt::from_str(s)
                    .map_err(|_| Error::InvalidInput(format!("bad residue `{s}`")))?;
                let m = BigInt::from(*p);
                let r = ((v % &m) + &m) % &m;
                let r: u64 = r.try_into().expect("reduced residue fits u64");
                Ok(Scalar {
                    field: *self,
                    repr: Repr::Mod(r),
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Rat(BigRational),
    Mod(u64),
}

/// An exact field element. Arithmetic panics on mixed fields (a programming
/// error); division is fallible because division by zero is a data error.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    field: FieldSpec,
    repr: Repr,
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Mod(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_one(),
            Repr::Mod(r) => *r == 1,
        }
    }

    /// The rational value, if the scalar lives over `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            Repr::Mod(_) => None,
        }
    }

    /// The residue in `[0, p)`, if the scalar lives over a prime field.
    pub fn as_residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Rat(_) => None,
            Repr::Mod(r) => Some(*r),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Rat(r) => Repr::Rat(r.recip()),
            Repr::Mod(r) => {
                let p = self.field.characteristic();
                Repr::Mod(inv_mod(*r, p))
            }
        };
        Ok(Scalar {
            field: self.field,
            repr,
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Total order used only for canonical sorting of output. Residues order
    /// numerically; rationals order as numbers.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        assert_eq!(self.field, other.field, "field mismatch");
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => a.cmp(b),
            (Repr::Mod(a), Repr::Mod(b)) => a.cmp(b),
            _ => unreachable!(),
        }
    }
}

fn check_fields(a: &Scalar, b: &Scalar) {
    assert_eq!(a.field, b.field, "field mismatch: {} vs {}", a.field, b.field);
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        check_fields(self, rhs);
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = self.field.characteristic();
                Repr::Mod(add_mod(*a, *b, p))
            }
            _ => unreachable!(),
        };
        Scalar {
            field: self.field,
            repr,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        check_fields(self, rhs);
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a - b),
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = self.field.characteristic();
                Repr::Mod(add_mod(*a, p - *b % p, p))
            }
            _ => unreachable!(),
        };
        Scalar {
            field: self.field,
            repr,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        check_fields(self, rhs);
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = self.field.characteristic();
                Repr::Mod(mul_mod(*a, *b, p))
            }
            _ => unreachable!(),
        };
        Scalar {
            field: self.field,
            repr,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let repr = match &self.repr {
            Repr::Rat(a) => Repr::Rat(-a),
            Repr::Mod(a) => {
                let p = self.field.characteristic();
                Repr::Mod(if *a == 0 { 0 } else { p - a })
            }
        };
        Scalar {
            field: self.field,
            repr,
        }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident, $method:ident);*) => {$(
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_value_ops!(Add, add; Sub, sub; Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Mod(r) => write!(f, "{r}"),
        }
    }
}

/// Signed magnitude helper used by the rational factorizer.
pub(crate) fn rational_to_bigint(s: &Scalar) -> Option<BigInt> {
    let r = s.as_rational()?;
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}

pub(crate) fn scalar_from_bigint(field: FieldSpec, v: &BigInt) -> Scalar {
    match field {
        FieldSpec::Rationals => Scalar {
            field,
            repr: Repr::Rat(BigRational::from_integer(v.clone())),
        },
        FieldSpec::PrimeField(p) => {
            let m = BigInt::from(p);
            let r = ((v % &m) + &m) % &m;
            let r: u64 = r.try_into().expect("reduced residue fits u64");
            Scalar {
                field,
                repr: Repr::Mod(r),
            }
        }
    }
}

pub(crate) fn scalar_from_rational(r: BigRational) -> Scalar {
    Scalar {
        field: FieldSpec::Rationals,
        repr: Repr::Rat(r),
    }
}

pub(crate) fn scalar_is_negative(s: &Scalar) -> bool {
    match &s.repr {
        Repr::Rat(r) => r.is_negative(),
        Repr::Mod(_) => false,
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = (a as u128 + b as u128) % p as u128;
    s as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a != 0 mod p.
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all u64 inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(FieldSpec::prime_field(7).is_ok());
        assert_eq!(FieldSpec::prime_field(6), Err(Error::NotPrime(6)));
        assert_eq!(FieldSpec::prime_field(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn characteristic_and_cardinality() {
        let q = FieldSpec::rationals();
        assert_eq!(q.characteristic(), 0);
        assert_eq!(q.cardinality(), None);
        let f5 = FieldSpec::prime_field(5).unwrap();
        assert_eq!(f5.characteristic(), 5);
        assert_eq!(f5.cardinality(), Some(5));
    }

    #[test]
    fn rational_canonical_form() {
        let q = FieldSpec::rationals();
        let a = q.parse_scalar("2/4").unwrap();
        let b = q.parse_scalar("1/2").unwrap();
        assert_eq!(a, b);
        let c = q.parse_scalar("3/-6").unwrap();
        assert_eq!(c.to_string(), "-1/2");
    }

    #[test]
    fn residue_arithmetic() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        let a = f7.scalar_from_i64(5);
        let b = f7.scalar_from_i64(4);
        assert_eq!((&a + &b).to_string(), "2");
        assert_eq!((&a * &b).to_string(), "6");
        assert_eq!((&a - &b).to_string(), "1");
        assert_eq!(a.inv().unwrap().to_string(), "3");
        assert_eq!(f7.parse_scalar("-1").unwrap().to_string(), "6");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let q = FieldSpec::rationals();
        assert_eq!(q.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(q.one().div(&q.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn miller_rabin_small() {
        let primes: Vec<u64> = (2..100).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![
                2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
                79, 83, 89, 97
            ]
        );
        assert!(is_prime_u64(4294967311)); // prime just above 2^32
        assert!(!is_prime_u64(4294967297)); // 641 * 6700417
    }
}
