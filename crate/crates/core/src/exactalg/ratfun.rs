//! Reduced rational functions.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::gcd::poly_gcd;
use crate::exactalg::poly::Polynomial;

/// `numerator / denominator` with coprime parts and a denominator whose
/// grevlex leading coefficient is 1. Zero is stored as `0 / 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

/// Reduces `h / k` to lowest terms.
pub fn reduce_fraction(h: &Polynomial, k: &Polynomial) -> Result<RationalFunction> {
    h.check_compatible(k)?;
    if k.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if h.is_zero() {
        return Ok(RationalFunction {
            numerator: h.clone(),
            denominator: Polynomial::one(h.field(), h.nvars()),
        });
    }
    let g = poly_gcd(h, k)?;
    let num = h.exact_div(&g)?;
    let den = k.exact_div(&g)?;
    let lc = den
        .leading_coefficient()
        .expect("nonzero denominator")
        .clone();
    let inv = lc.inv().expect("nonzero");
    Ok(RationalFunction {
        numerator: num.scale(&inv),
        denominator: den.scale(&inv),
    })
}

impl RationalFunction {
    pub fn new(numerator: &Polynomial, denominator: &Polynomial) -> Result<Self> {
        reduce_fraction(numerator, denominator)
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        RationalFunction {
            numerator: p.clone(),
            denominator: Polynomial::one(p.field(), p.nvars()),
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// True when the value is a field constant.
    pub fn is_constant(&self) -> bool {
        self.numerator.is_constant() && self.denominator.is_constant()
    }

    pub fn checked_add(&self, other: &RationalFunction) -> Result<RationalFunction> {
        let num = self
            .numerator
            .checked_mul(&other.denominator)?
            .checked_add(&other.numerator.checked_mul(&self.denominator)?)?;
        let den = self.denominator.checked_mul(&other.denominator)?;
        reduce_fraction(&num, &den)
    }

    pub fn checked_mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        let num = self.numerator.checked_mul(&other.numerator)?;
        let den = self.denominator.checked_mul(&other.denominator)?;
        reduce_fraction(&num, &den)
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Result<RationalFunction> {
        self.checked_mul(&RationalFunction::from_polynomial(p))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Field;

    fn y(i: usize) -> Polynomial {
        Polynomial::var(Field::Rationals, 2, i - 1)
    }

    #[test]
    fn reduces_common_factors() {
        let r = reduce_fraction(&(&y(1) * &y(2)), &y(1)).unwrap();
        assert_eq!(r.numerator(), &y(2));
        assert!(r.denominator().is_one());

        let h = &y(2) * &(&y(1) - &y(2));
        let k = &y(1) * &(&y(1) - &y(2));
        let r = reduce_fraction(&h, &k).unwrap();
        assert_eq!((r.numerator(), r.denominator()), (&y(2), &y(1)));
        // cross-multiplication
        assert_eq!(&h * r.denominator(), &k * r.numerator());
    }

    #[test]
    fn zero_numerator_gets_unit_denominator() {
        let zero = Polynomial::zero(Field::Rationals, 2);
        let r = reduce_fraction(&zero, &(&y(1) + &y(2))).unwrap();
        assert!(r.is_zero());
        assert!(r.denominator().is_one());
        assert_eq!(reduce_fraction(&y(1), &zero), Err(Error::ZeroDenominator));
    }

    #[test]
    fn denominator_is_normalized() {
        let two = Field::Rationals.from_i64(2);
        let r = reduce_fraction(&y(2), &y(1).scale(&two)).unwrap();
        assert_eq!(r.denominator(), &y(1));
        assert_eq!(r.to_string(), "(1/2*y2) / (y1)");
        let again = reduce_fraction(r.numerator(), r.denominator()).unwrap();
        assert_eq!(again, r);
    }
}
