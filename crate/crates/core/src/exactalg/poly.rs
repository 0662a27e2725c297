//! Sparse multivariate polynomials over an exact field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactalg::field::{Field, FieldScalar};

/// Exponent vector. `Ord` is the graded reverse lexicographic order with
/// `y1 > y2 > ... > yn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }
}

pub(crate) fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_cmp(&self.exps, &other.exps)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `nvars` variables. No zero coefficient is ever
/// stored, so equal polynomials have identical term maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldScalar>,
}

impl Polynomial {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field.one(), nvars)
    }

    pub fn constant(c: FieldScalar, nvars: usize) -> Self {
        Self::monomial(c, Monomial::one(nvars))
    }

    pub fn monomial(c: FieldScalar, m: Monomial) -> Self {
        let mut p = Polynomial::zero(c.field(), m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable `y_{i+1}` (zero based index `i`).
    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        assert!(
            i < nvars,
            "variable index {i} out of range for {nvars} variables"
        );
        Self::monomial(field.one(), Monomial::var(nvars, i))
    }

    /// Sum of `coeffs[i] * y_{i+1}`.
    pub fn linear_form(field: Field, coeffs: &[FieldScalar]) -> Self {
        let n = coeffs.len();
        let mut p = Polynomial::zero(field, n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn from_terms<I>(field: Field, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, FieldScalar)>,
    {
        let mut p = Polynomial::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: FieldScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldScalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldScalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> FieldScalar {
        self.coefficient(&Monomial::one(self.nvars))
    }

    /// Leading term under grevlex.
    pub fn leading_term(&self) -> Option<(&Monomial, &FieldScalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&FieldScalar> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Maximum total degree; `None` stands for the degree of the zero
    /// polynomial (minus infinity).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True iff all terms share one total degree. The zero polynomial is
    /// homogeneous of every degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Common degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            self.total_degree()
        }
    }

    /// Coefficients of a linear form (`None` unless the polynomial is zero or
    /// homogeneous of degree one).
    pub fn linear_coefficients(&self) -> Option<Vec<FieldScalar>> {
        if !self.is_zero() && self.homogeneous_degree() != Some(1) {
            return None;
        }
        Some(
            (0..self.nvars)
                .map(|i| self.coefficient(&Monomial::var(self.nvars, i)))
                .collect(),
        )
    }

    pub(crate) fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldScalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, self.nvars);
        }
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &FieldScalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, self.nvars);
        }
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scales so the grevlex leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn evaluate(&self, point: &[FieldScalar]) -> Result<FieldScalar> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        if let Some(bad) = point.iter().find(|c| c.field() != self.field) {
            return Err(Error::FieldMismatch(self.field, bad.field()));
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Multivariate division by a single divisor under grevlex:
    /// returns `(quotient, remainder)` with `self = quotient * d + remainder`.
    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_compatible(d)?;
        let (lm, lc) = d.leading_term().ok_or(Error::ZeroDenominator)?;
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut quot = Polynomial::zero(self.field, self.nvars);
        let mut rem = Polynomial::zero(self.field, self.nvars);
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.pop_last() {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = &c * &lc_inv;
                // the leading term cancels by construction; subtract the rest
                for (dm, dc) in d.terms.iter().rev().skip(1) {
                    p.add_term(dm.mul(&qm), -(&qc * dc));
                }
                quot.add_term(qm, qc);
            } else {
                rem.add_term(m, c);
            }
        }
        Ok((quot, rem))
    }

    /// Exact quotient `self / d`; fails when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        !self.is_zero() && other.exact_div(self).is_ok()
    }

    /// Degree in variable `var`, `None` for zero.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exps[var]).max()
    }

    /// Index of the last variable that occurs.
    pub fn last_active_var(&self) -> Option<usize> {
        (0..self.nvars)
            .rev()
            .find(|&v| self.terms.keys().any(|m| m.exps[v] > 0))
    }

    /// Writes `self = sum_k coeffs[k] * y_var^k` with coefficients free of `y_var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Polynomial::zero(self.field, self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exps[var] as usize;
            let mut stripped = m.clone();
            stripped.exps[var] = 0;
            out[k].terms.insert(stripped, c.clone());
        }
        out
    }

    /// Inverse of [`Polynomial::coefficients_in`].
    pub fn from_coefficients_in(
        var: usize,
        coeffs: &[Polynomial],
        field: Field,
        nvars: usize,
    ) -> Self {
        let mut out = Polynomial::zero(field, nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut shifted = m.clone();
                shifted.exps[var] += k as u32;
                out.add_term(shifted, a.clone());
            }
        }
        out
    }

    /// Same polynomial in `nvars + extra` variables; new variables come last.
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.exps.clone();
                    exps.resize(self.nvars + extra, 0);
                    (Monomial { exps }, c.clone())
                })
                .collect(),
        }
    }

    /// Renders with custom variable names (one per variable).
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay {
            poly: self,
            names: Some(names),
        }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: Option<&'a [String]>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.poly.terms().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c } else { c.clone() };
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = match self.names {
                    Some(names) => names[i].clone(),
                    None => format!("y{}", i + 1),
                };
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PolyDisplay {
            poly: self,
            names: None,
        }
        .fmt(f)
    }
}

macro_rules! checked_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            /// Panics on mismatched field or variable count.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs)
                    .expect("incompatible polynomial operands")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

checked_binop!(Add, add, checked_add);
checked_binop!(Sub, sub, checked_sub);
checked_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(n: usize, i: usize) -> Polynomial {
        Polynomial::var(Field::Rationals, n, i - 1)
    }

    fn c(v: i64, n: usize) -> Polynomial {
        Polynomial::constant(Field::Rationals.from_i64(v), n)
    }

    #[test]
    fn arithmetic_examples() {
        let (y1, y2) = (y(2, 1), y(2, 2));
        assert_eq!(&(&y1 + &y2) + &(-&y2), y1);
        assert!((&y1 * &Polynomial::zero(Field::Rationals, 2)).is_zero());
        let lhs = &(&y1 - &y2) * &(&y1 + &y2);
        assert_eq!(lhs, &(&y1 * &y1) - &(&y2 * &y2));
    }

    #[test]
    fn mismatched_operands_error() {
        let a = y(2, 1);
        let b = y(3, 1);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::ArityMismatch { .. })
        ));
        let p = Polynomial::var(Field::Prime(3), 2, 0);
        assert!(matches!(a.checked_mul(&p), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn degrees_and_homogeneity() {
        let n = 3;
        let p = &(&y(n, 1) * &y(n, 2)) + &y(n, 3);
        assert_eq!(p.total_degree(), Some(2));
        assert!(!p.is_homogeneous());
        assert_eq!(Polynomial::zero(Field::Rationals, n).total_degree(), None);
        assert_eq!(y(n, 1).pow(3).total_degree(), Some(3));
        let h = &y(n, 1).pow(2) + &(&y(n, 2) * &y(n, 3));
        assert!(h.is_homogeneous());
        assert_eq!(h.homogeneous_degree(), Some(2));
        assert!(!(&y(n, 1) + &c(1, n)).is_homogeneous());
        assert!(Polynomial::zero(Field::Rationals, n).is_homogeneous());
    }

    #[test]
    fn evaluation_examples() {
        let q = Field::Rationals;
        let pt: Vec<_> = [2, 3, 0].iter().map(|&v| q.from_i64(v)).collect();
        assert_eq!((&y(3, 1) * &y(3, 2)).evaluate(&pt).unwrap(), q.from_i64(6));
        assert!((&y(3, 1) - &y(3, 1)).evaluate(&pt).unwrap().is_zero());
        let f2 = Field::prime(2).unwrap();
        let a = Polynomial::var(f2, 3, 0);
        let b = Polynomial::var(f2, 3, 1);
        let p = &(&a * &a) + &b;
        let ones = vec![f2.one(); 3];
        assert!(p.evaluate(&ones).unwrap().is_zero());
        assert!(p.evaluate(&ones[..2]).is_err());
    }

    #[test]
    fn grevlex_order_and_printing() {
        let n = 3;
        // y1^2 > y1*y2 > y2^2 > y1*y3 under grevlex
        let p = &(&(&y(n, 1).pow(2) + &(&y(n, 1) * &y(n, 3))) - &y(n, 2).pow(2))
            + &(&y(n, 1) * &y(n, 2));
        assert_eq!(p.to_string(), "y1^2 + y1*y2 - y2^2 + y1*y3");
        let half = Field::Rationals
            .from_rational(&num_rational::BigRational::new(1.into(), 2.into()))
            .unwrap();
        assert_eq!((&y(n, 2).scale(&half) - &c(3, n)).to_string(), "1/2*y2 - 3");
    }

    #[test]
    fn division() {
        let n = 2;
        let a = &y(n, 1).pow(2) - &y(n, 2).pow(2);
        let b = &y(n, 1) - &y(n, 2);
        assert_eq!(a.exact_div(&b).unwrap(), &y(n, 1) + &y(n, 2));
        assert_eq!(y(n, 1).exact_div(&y(n, 2)), Err(Error::NotDivisible));
        let (q, r) = (&a + &c(1, n)).div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, &a + &c(1, n));
    }

    #[test]
    fn coefficient_split_round_trip() {
        let n = 3;
        let p = &(&y(n, 1) * &y(n, 3).pow(2)) + &(&y(n, 2) - &y(n, 3));
        let cs = p.coefficients_in(2);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], y(n, 1));
        assert_eq!(
            Polynomial::from_coefficients_in(2, &cs, Field::Rationals, n),
            p
        );
    }
}
