//! Exact coefficient fields.
//!
//! Two fields are supported: the rationals (arbitrary precision, always in
//! lowest terms) and prime fields `F_p` for `p < 2^32`, whose elements are
//! stored as the canonical representative in `[0, p)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Field descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Prime field `F_p`. Rejects composite moduli and `p >= 2^32`.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldScalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldScalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldScalar {
        match *self {
            Field::Rationals => FieldScalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => FieldScalar::Prime {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldScalar {
        match *self {
            Field::Rationals => FieldScalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                FieldScalar::Prime {
                    value: r.to_u64().expect("reduced residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    /// Image of the rational `q` in this field; fails when the denominator
    /// vanishes modulo `p`.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldScalar> {
        match self {
            Field::Rationals => Ok(FieldScalar::Rational(q.clone())),
            Field::Prime(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                num.checked_div(&den)
            }
        }
    }

    /// Elements of a prime field in increasing representative order.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldScalar>> {
        match *self {
            Field::Prime(p) => {
                Ok((0..p).map(move |value| FieldScalar::Prime { value, modulus: p }))
            }
            Field::Rationals => Err(Error::NotPrimeField(*self)),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// An element of an exact field, tagged with its field.
///
/// Binary operators panic when the operands live in different fields; use
/// the polynomial layer's checked operations to get an error instead.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl FieldScalar {
    pub fn field(&self) -> Field {
        match self {
            FieldScalar::Rational(_) => Field::Rationals,
            FieldScalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(q) => q.is_zero(),
            FieldScalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Rational(q) => q.is_one(),
            FieldScalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldScalar::Rational(q) => Some(q),
            FieldScalar::Prime { .. } => None,
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldScalar::Rational(q) => q.is_negative(),
            FieldScalar::Prime { .. } => false,
        }
    }

    pub fn inv(&self) -> Option<FieldScalar> {
        match self {
            FieldScalar::Rational(q) => {
                if q.is_zero() {
                    None
                } else {
                    Some(FieldScalar::Rational(q.recip()))
                }
            }
            FieldScalar::Prime { value, modulus } => {
                if *value == 0 {
                    None
                } else {
                    Some(FieldScalar::Prime {
                        value: pow_mod(*value, modulus - 2, *modulus),
                        modulus: *modulus,
                    })
                }
            }
        }
    }

    pub fn checked_div(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        let inv = rhs.inv().ok_or(Error::ZeroDenominator)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, mut e: u32) -> FieldScalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn same_field(&self, rhs: &FieldScalar) {
        assert_eq!(
            self.field(),
            rhs.field(),
            "arithmetic between scalars of different fields"
        );
    }
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

impl<'a> Add<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        self.same_field(rhs);
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a + b),
            (FieldScalar::Prime { value: a, modulus }, FieldScalar::Prime { value: b, .. }) => {
                FieldScalar::Prime {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        self.same_field(rhs);
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a - b),
            (FieldScalar::Prime { value: a, modulus }, FieldScalar::Prime { value: b, .. }) => {
                FieldScalar::Prime {
                    value: (a + modulus - b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        self.same_field(rhs);
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a * b),
            (FieldScalar::Prime { value: a, modulus }, FieldScalar::Prime { value: b, .. }) => {
                FieldScalar::Prime {
                    value: a * b % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Div<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    /// Panics on division by zero.
    fn div(self, rhs: &FieldScalar) -> FieldScalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        match self {
            FieldScalar::Rational(a) => FieldScalar::Rational(-a),
            FieldScalar::Prime { value, modulus } => FieldScalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldScalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let q = Field::Rationals;
        let a = q
            .from_rational(&BigRational::new(4.into(), (-6).into()))
            .unwrap();
        assert_eq!(a.to_string(), "-2/3");
        let b = &a * &q.from_i64(-3);
        assert!(b == q.from_i64(2));
    }

    #[test]
    fn prime_field_canonical_representatives() {
        let f = Field::prime(5).unwrap();
        assert_eq!(
            f.from_i64(-1),
            FieldScalar::Prime {
                value: 4,
                modulus: 5
            }
        );
        let two = f.from_i64(2);
        assert_eq!((&two * &two.inv().unwrap()), f.one());
        assert_eq!(&f.from_i64(1) + &f.from_i64(1), f.from_i64(2));
        let half = f
            .from_rational(&BigRational::new(1.into(), 2.into()))
            .unwrap();
        assert_eq!(half, f.from_i64(3));
        assert!(f
            .from_rational(&BigRational::new(1.into(), 5.into()))
            .is_err());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(Field::prime(4), Err(Error::NotPrime(4)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    #[should_panic]
    fn mixed_fields_panic() {
        let _ = &Field::Rationals.one() + &Field::Prime(3).one();
    }
}
