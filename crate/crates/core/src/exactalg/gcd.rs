//! Multivariate gcd and lcm.
//!
//! The gcd recurses on the last active variable: polynomials are viewed as
//! univariate in that variable with coefficients in the ring of the
//! remaining ones, the content is split off recursively, and the primitive
//! parts go through a subresultant polynomial remainder sequence.

use crate::error::{Error, Result};
use crate::exactalg::field::Field;
use crate::exactalg::poly::Polynomial;

/// Greatest common divisor, normalized to grevlex leading coefficient 1.
/// `gcd(0, b)` is `b` normalized; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    a.check_compatible(b)?;
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    Ok(gcd_nonzero(a, b).monic())
}

/// Least common multiple `a*b / gcd(a, b)`, normalized.
pub fn poly_lcm(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("lcm"));
    }
    let g = poly_gcd(a, b)?;
    Ok(a.exact_div(&g)?.checked_mul(b)?.monic())
}

fn gcd_nonzero(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (field, n) = (a.field(), a.nvars());
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(field, n);
    }
    let v = a
        .last_active_var()
        .max(b.last_active_var())
        .expect("non-constant");
    if a.degree_in(v) == Some(0) {
        return gcd_nonzero(a, &content(b, v));
    }
    if b.degree_in(v) == Some(0) {
        return gcd_nonzero(&content(a, v), b);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let pa = UniPoly::from_poly(a, v).div_scalar(&ca);
    let pb = UniPoly::from_poly(b, v).div_scalar(&cb);
    let c = gcd_nonzero(&ca, &cb);
    let g = subresultant_gcd(pa, pb).to_poly(field, n);
    &c * &g
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `y_v`.
fn content(p: &Polynomial, v: usize) -> Polynomial {
    let mut acc: Option<Polynomial> = None;
    for c in p.coefficients_in(v).into_iter().filter(|c| !c.is_zero()) {
        let next = match acc {
            None => c.monic(),
            Some(g) => gcd_nonzero(&g, &c).monic(),
        };
        if next.is_constant() {
            return next;
        }
        acc = Some(next);
    }
    acc.expect("content of a nonzero polynomial")
}

/// Univariate polynomial in `y_var` whose coefficients are free of `y_var`.
#[derive(Clone)]
struct UniPoly {
    var: usize,
    coeffs: Vec<Polynomial>,
}

impl UniPoly {
    fn from_poly(p: &Polynomial, var: usize) -> Self {
        let mut u = UniPoly {
            var,
            coeffs: p.coefficients_in(var),
        };
        u.trim();
        u
    }

    fn to_poly(&self, field: Field, nvars: usize) -> Polynomial {
        Polynomial::from_coefficients_in(self.var, &self.coeffs, field, nvars)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Polynomial::is_zero) {
            self.coeffs.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn lc(&self) -> &Polynomial {
        self.coeffs.last().expect("nonzero")
    }

    fn scale(&self, c: &Polynomial) -> UniPoly {
        let mut u = UniPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        };
        u.trim();
        u
    }

    fn div_scalar(&self, c: &Polynomial) -> UniPoly {
        UniPoly {
            var: self.var,
            coeffs: self
                .coeffs
                .iter()
                .map(|a| a.exact_div(c).expect("exact coefficient division"))
                .collect(),
        }
    }

    /// `self - c * y^shift * other`
    fn sub_shifted(&self, c: &Polynomial, shift: usize, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len() + shift);
        let zero = Polynomial::zero(c.field(), c.nvars());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, zero);
        for (k, b) in other.coeffs.iter().enumerate() {
            coeffs[k + shift] = &coeffs[k + shift] - &(c * b);
        }
        let mut u = UniPoly {
            var: self.var,
            coeffs,
        };
        u.trim();
        u
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn prem(&self, b: &UniPoly) -> UniPoly {
        let mut r = self.clone();
        let mut e = (self.degree() + 1 - b.degree()) as u32;
        let lb = b.lc().clone();
        while !r.is_zero() && r.degree() >= b.degree() {
            let shift = r.degree() - b.degree();
            let lr = r.lc().clone();
            r = r.scale(&lb).sub_shifted(&lr, shift, b);
            e -= 1;
        }
        r.scale(&lb.pow(e))
    }

    fn primitive_part(&self) -> UniPoly {
        let p = self.to_poly(self.lc().field(), self.lc().nvars());
        self.div_scalar(&content(&p, self.var))
    }
}

/// Gcd of two primitive univariate polynomials over a polynomial ring,
/// via the subresultant PRS. The result is primitive.
fn subresultant_gcd(a: UniPoly, b: UniPoly) -> UniPoly {
    let (mut a, mut b) = if a.degree() >= b.degree() {
        (a, b)
    } else {
        (b, a)
    };
    let field = a.lc().field();
    let n = a.lc().nvars();
    let one = Polynomial::one(field, n);
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = (a.degree() - b.degree()) as u32;
        let r = a.prem(&b);
        if r.is_zero() {
            return b.primitive_part();
        }
        if r.degree() == 0 {
            return UniPoly {
                var: a.var,
                coeffs: vec![one],
            };
        }
        a = b;
        b = r.div_scalar(&(&g * &h.pow(delta)));
        g = a.lc().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant division")
        };
    }
}
