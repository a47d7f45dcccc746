//! Exact coefficient fields: prime fields GF(p) with p ≤ 2^31 and the
//! rationals with arbitrary-precision numerator and denominator.
//!
//! A [`Scalar`] carries enough information to know which field it lives in,
//! so arithmetic between elements of different fields is rejected with
//! [`Error::MixedFields`]. The operator impls (`&a + &b`, ...) panic on such a
//! mismatch; polynomial code only combines scalars of one ring, and callers
//! that cannot guarantee this use the `checked_*` methods.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_MODULUS: u64 = 1 << 31;

/// The coefficient field `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Field {
    /// GF(p); the modulus is prime and at most 2^31.
    #[serde(rename = "gfp")]
    Prime { p: u64 },
    #[serde(alias = "q", alias = "rational")]
    Rationals,
}

impl Field {
    /// GF(p), rejecting composite and oversized moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime { p })
    }

    pub fn rationals() -> Field {
        Field::Rationals
    }

    /// Re-checks the modulus of a deserialized descriptor.
    pub fn validate(self) -> Result<Field> {
        match self {
            Field::Prime { p } => Field::prime(p),
            Field::Rationals => Ok(self),
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Field::Prime { p } => Some(*p),
            Field::Rationals => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Prime { p } => Scalar::Mod {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Field::Prime { p } => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Mod {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p,
                }
            }
            Field::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
        }
    }

    /// `num / den` in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        n.checked_div(&d)
    }

    /// Parses the scalar text form: a decimal integer, or `a/b`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let parse_int = |s: &str| BigInt::from_str(s.trim()).map_err(|_| Error::parse(0, format!("bad integer {s:?}")));
        match text.split_once('/') {
            Some((n, d)) => self.from_ratio(&parse_int(n)?, &parse_int(d)?),
            None => Ok(self.from_bigint(&parse_int(text)?)),
        }
    }

    /// All elements of a prime field in increasing residue order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            Field::Prime { p } => Some((0..p).map(|value| Scalar::Mod { value, modulus: p }).collect()),
            Field::Rationals => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime { p } => write!(f, "gfp:{p}"),
            Field::Rationals => write!(f, "q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// `q`, `rational`, `gfp:P` or `gf(P)`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim().to_ascii_lowercase();
        if s == "q" || s == "rational" || s == "rationals" {
            return Ok(Field::Rationals);
        }
        let digits = s
            .strip_prefix("gfp:")
            .or_else(|| s.strip_prefix("gf(").and_then(|r| r.strip_suffix(')')))
            .ok_or_else(|| Error::Invalid(format!("unknown field {s:?}")))?;
        let p = digits
            .parse::<u64>()
            .map_err(|_| Error::Invalid(format!("bad modulus {digits:?}")))?;
        Field::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`Field`] in canonical form: the least nonnegative
/// residue for GF(p), a reduced fraction with positive denominator for ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod { value: u64, modulus: u64 },
    Rational(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod { modulus, .. } => Field::Prime { p: *modulus },
            Scalar::Rational(_) => Field::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Rational(q) => q.is_one(),
        }
    }

    /// True for negative rationals; prime-field elements have no sign.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => Ok(Scalar::Mod {
                value: (a + b) % p,
                modulus: *p,
            }),
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            _ => Err(Error::MixedFields),
        }
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.checked_add(&rhs.neg_ref())
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => Ok(Scalar::Mod {
                value: a * b % p,
                modulus: *p,
            }),
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            _ => Err(Error::MixedFields),
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if self.field() != rhs.field() {
            return Err(Error::MixedFields);
        }
        self.checked_mul(&rhs.inv()?)
    }

    /// Multiplicative inverse; GF(p) uses the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Scalar::Mod { value, modulus } => Ok(Scalar::Mod {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            }),
            Scalar::Rational(q) => Ok(Scalar::Rational(q.recip())),
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            Scalar::Rational(q) => Scalar::Rational(-q),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// `k · self` for a nonnegative integer `k` (binomial coefficients etc.).
    pub fn scale_by(&self, k: u64) -> Scalar {
        self * &self.field().from_bigint(&BigInt::from(k))
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "modulus is prime and a is nonzero");
    old_s.rem_euclid(p as i128) as u64
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalars from different fields")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalars from different fields")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalars from different fields")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn examples() {
        let f5 = gf(5);
        assert_eq!(&f5.from_i64(3) * &f5.from_i64(4), f5.from_i64(2));

        let q = Field::Rationals;
        let half = q.parse_scalar("1/2").unwrap();
        let third = q.parse_scalar("1/3").unwrap();
        assert_eq!(&half + &third, q.parse_scalar("5/6").unwrap());

        let f11 = gf(11);
        assert_eq!(f11.from_i64(3).inv().unwrap(), f11.from_i64(4));
    }

    #[test]
    fn inverse_matches_brute_force_search() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let field = gf(p);
            for a in 1..p {
                let by_search = (1..p).find(|b| a * b % p == 1).unwrap();
                let x = field.from_i64(a as i64);
                assert_eq!(x.inv().unwrap(), field.from_i64(by_search as i64));
                assert!((&x * &x.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(Field::prime(15), Err(Error::NotPrime(15)));
        assert_eq!(Field::prime(1 << 32), Err(Error::ModulusTooLarge(1 << 32)));
        assert!(Field::prime(2147483647).is_ok());
    }

    #[test]
    fn errors() {
        let a = gf(5).one();
        let b = gf(7).one();
        assert_eq!(a.checked_add(&b), Err(Error::MixedFields));
        assert_eq!(a.checked_mul(&Field::Rationals.one()), Err(Error::MixedFields));
        assert_eq!(a.checked_div(&gf(5).zero()), Err(Error::DivisionByZero));
        assert_eq!(Field::Rationals.zero().inv(), Err(Error::DivisionByZero));
        assert!(Field::Rationals.parse_scalar("1/0").is_err());
    }

    #[test]
    fn canonical_forms() {
        let q = Field::Rationals;
        assert_eq!(q.parse_scalar("2/-4").unwrap(), q.parse_scalar("-1/2").unwrap());
        assert_eq!(q.parse_scalar("-6/3").unwrap().to_string(), "-2");
        let f7 = gf(7);
        assert_eq!(f7.parse_scalar("-1").unwrap().to_string(), "6");
        assert_eq!(f7.parse_scalar("1/2").unwrap(), f7.from_i64(4));
        assert_ne!(f7.zero(), f7.one());
    }

    #[test]
    fn field_text_forms() {
        assert_eq!("gfp:11".parse::<Field>().unwrap(), gf(11));
        assert_eq!("GF(13)".parse::<Field>().unwrap(), gf(13));
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rationals);
        assert!("gfp:12".parse::<Field>().is_err());
        let json: Field = serde_json::from_str(r#"{"kind":"gfp","p":11}"#).unwrap();
        assert_eq!(json, gf(11));
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fields = [gf(5), gf(13), gf(2147483647), Field::Rationals];
        for field in fields {
            for _ in 0..300 {
                let mut draw = || {
                    let n = rng.gen_range(-50i64..50);
                    let d = rng.gen_range(1i64..9);
                    field
                        .from_ratio(&BigInt::from(n), &BigInt::from(d))
                        .unwrap_or_else(|_| field.from_i64(n))
                };
                let (a, b, c) = (draw(), draw(), draw());
                assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a + &b, &b + &a);
                assert_eq!(&a * &b, &b * &a);
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert!((&a - &a).is_zero());
                if !a.is_zero() {
                    assert!((&a * &a.inv().unwrap()).is_one());
                }
            }
        }
    }
}
