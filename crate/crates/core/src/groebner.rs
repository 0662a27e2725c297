//! Gröbner bases: multivariate division, Buchberger's algorithm with the
//! Gebauer-Möller pair update (product and chain criteria), reduced bases,
//! and ideal / radical membership.
//!
//! Internally polynomials are kept as term vectors sorted ascending under
//! the active monomial order, so the leading term is always the last entry.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exactalg::{grevlex_cmp, Field, FieldScalar, Monomial, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, `y1 > y2 > ... > yn`.
    #[default]
    Grevlex,
    /// Lexicographic, `y1 > y2 > ... > yn`.
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex_cmp(a.exponents(), b.exponents()),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
        }
    }
}

/// An ideal given by generators; zero generators are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    field: Field,
    nvars: usize,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(field: Field, nvars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.field() != field {
                return Err(Error::FieldMismatch(field, g.field()));
            }
            if g.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
        }
        Ok(Ideal {
            field,
            nvars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(field: Field, nvars: usize) -> Self {
        Ideal {
            field,
            nvars,
            generators: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if f.field() != self.field {
            return Err(Error::FieldMismatch(self.field, f.field()));
        }
        if f.nvars() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: f.nvars(),
            });
        }
        Ok(())
    }
}

type Term = (Monomial, FieldScalar);

/// Terms sorted ascending under the order; the leading term is last.
#[derive(Debug, Clone, PartialEq, Eq)]
struct OPoly {
    terms: Vec<Term>,
}

impl OPoly {
    fn from_poly(p: &Polynomial, order: MonomialOrder) -> Self {
        let mut terms: Vec<Term> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        OPoly { terms }
    }

    fn to_poly(&self, field: Field, nvars: usize) -> Polynomial {
        Polynomial::from_terms(field, nvars, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").0
    }

    fn lc(&self) -> &FieldScalar {
        &self.terms.last().expect("nonzero").1
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.lm().is_one()
    }

    fn monic(mut self) -> Self {
        if let Some(inv) = self.terms.last().map(|t| t.1.inv().expect("nonzero")) {
            for t in &mut self.terms {
                t.1 = &t.1 * &inv;
            }
        }
        self
    }

    fn extend_vars(&self, extra: usize) -> Self {
        OPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.resize(e.len() + extra, 0);
                    (Monomial::new(e), c.clone())
                })
                .collect(),
        }
    }
}

/// `p - c * m * g`, merging two ascending term lists.
fn sub_scaled(
    p: &[Term],
    c: &FieldScalar,
    m: &Monomial,
    g: &[Term],
    order: MonomialOrder,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |t: &Term| (t.0.mul(m), -(c * &t.1));
    while i < p.len() && j < g.len() {
        let (gm, gc) = shifted(&g[j]);
        match order.cmp(&p[i].0, &gm) {
            Ordering::Less => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((gm, gc));
                j += 1;
            }
            Ordering::Equal => {
                let s = &p[i].1 + &gc;
                if !s.is_zero() {
                    out.push((gm, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&p[i..]);
    out.extend(g[j..].iter().map(shifted));
    out
}

/// Full reduction of `f` by `divisors` (tried in list order).
fn reduce(f: &OPoly, divisors: &[&OPoly], order: MonomialOrder) -> OPoly {
    let mut p = f.terms.clone();
    let mut rem: Vec<Term> = Vec::new();
    while let Some((lm, lc)) = p.last().cloned() {
        match divisors.iter().find(|g| g.lm().divides(&lm)) {
            Some(g) => {
                let q = g.lm().quotient_of(&lm);
                let c = &lc / g.lc();
                p = sub_scaled(&p, &c, &q, &g.terms, order);
            }
            None => {
                p.pop();
                rem.push((lm, lc));
            }
        }
    }
    rem.reverse();
    OPoly { terms: rem }
}

/// Remainder of multivariate division of `f` by the list `divisors`:
/// no term of the result is divisible by a leading term of a divisor, and
/// `f - result` lies in the ideal they generate.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial], order: MonomialOrder) -> Polynomial {
    let ops: Vec<OPoly> = divisors
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| OPoly::from_poly(g, order))
        .collect();
    let refs: Vec<&OPoly> = ops.iter().collect();
    reduce(&OPoly::from_poly(f, order), &refs, order).to_poly(f.field(), f.nvars())
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn coprime(a: &Monomial, b: &Monomial) -> bool {
    a.exponents()
        .iter()
        .zip(b.exponents())
        .all(|(x, y)| *x == 0 || *y == 0)
}

/// Working state of a Buchberger run.
struct Engine {
    order: MonomialOrder,
    polys: Vec<OPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    unit: bool,
}

impl Engine {
    fn new(order: MonomialOrder) -> Self {
        Engine {
            order,
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            unit: false,
        }
    }

    /// Seeds with polynomials already forming a Gröbner basis.
    fn seeded(order: MonomialOrder, basis: Vec<OPoly>) -> Self {
        let unit = basis.iter().any(OPoly::is_constant);
        let active = vec![true; basis.len()];
        Engine {
            order,
            polys: basis,
            active,
            pairs: Vec::new(),
            unit,
        }
    }

    fn active_refs(&self) -> Vec<&OPoly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }

    /// Reduces `f` against the current basis and inserts it if nonzero.
    fn insert(&mut self, f: &OPoly) {
        if self.unit {
            return;
        }
        let h = reduce(f, &self.active_refs(), self.order);
        if h.is_zero() {
            return;
        }
        let h = h.monic();
        if h.is_constant() {
            self.unit = true;
            return;
        }
        self.update(h);
    }

    /// Gebauer-Möller update for a new basis element `h`.
    fn update(&mut self, h: OPoly) {
        let hi = self.polys.len();
        let lm_h = h.lm().clone();
        let candidates: Vec<(usize, Monomial)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, self.polys[g].lm().lcm(&lm_h)))
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (k, (g, l)) in candidates.iter().enumerate() {
            let disjoint = coprime(self.polys[*g].lm(), &lm_h);
            let dominated = candidates[k + 1..]
                .iter()
                .chain(kept.iter())
                .any(|(_, l2)| l2.divides(l));
            if disjoint || !dominated {
                kept.push((*g, l.clone()));
            }
        }
        // product criterion
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !coprime(self.polys[*g].lm(), &lm_h))
            .map(|(g, lcm)| Pair { i: g, j: hi, lcm })
            .collect();

        // chain criterion on the old pairs
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && polys[p.i].lm().lcm(&lm_h) != p.lcm
                && polys[p.j].lm().lcm(&lm_h) != p.lcm)
        });
        self.pairs.extend(new_pairs);

        for g in 0..hi {
            if self.active[g] && lm_h.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.active.push(true);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .degree()
                    .cmp(&b.lcm.degree())
                    .then(a.i.cmp(&b.i))
                    .then(a.j.cmp(&b.j))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> OPoly {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let mf = f.lm().quotient_of(&p.lcm);
        let mg = g.lm().quotient_of(&p.lcm);
        let scaled_f: Vec<Term> = f
            .terms
            .iter()
            .map(|(m, c)| (m.mul(&mf), c / f.lc()))
            .collect();
        let c = g.lc().inv().expect("nonzero");
        OPoly {
            terms: sub_scaled(&scaled_f, &c, &mg, &g.terms, self.order),
        }
    }

    fn run(&mut self) {
        while !self.unit {
            let Some(pair) = self.next_pair() else { break };
            let s = self.spoly(&pair);
            self.insert(&s);
        }
    }

    /// Reduced basis, sorted ascending by leading monomial.
    fn reduced(&self, field: Field, nvars: usize) -> Vec<OPoly> {
        if self.unit {
            return vec![OPoly::from_poly(&Polynomial::one(field, nvars), self.order)];
        }
        let basis: Vec<&OPoly> = self.active_refs();
        let mut out: Vec<OPoly> = Vec::with_capacity(basis.len());
        for (k, g) in basis.iter().enumerate() {
            let others: Vec<&OPoly> = basis
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != k)
                .map(|(_, p)| *p)
                .collect();
            let lead = g.terms.last().expect("nonzero").clone();
            let tail = OPoly {
                terms: g.terms[..g.terms.len() - 1].to_vec(),
            };
            let mut r = reduce(&tail, &others, self.order);
            r.terms.push(lead);
            out.push(r.monic());
        }
        out.sort_by(|a, b| self.order.cmp(a.lm(), b.lm()));
        out
    }
}

/// A reduced Gröbner basis: monic elements, no term of any element
/// divisible by the leading term of another, sorted by leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    field: Field,
    nvars: usize,
    basis: Vec<Polynomial>,
    internal: Vec<OPoly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let refs: Vec<&OPoly> = self.internal.iter().collect();
        reduce(&OPoly::from_poly(f, self.order), &refs, self.order).to_poly(self.field, self.nvars)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Reduced Gröbner basis of the ideal under `order`.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> GroebnerBasis {
    let mut engine = Engine::new(order);
    for g in ideal.generators() {
        engine.insert(&OPoly::from_poly(g, order));
    }
    engine.run();
    let internal = engine.reduced(ideal.field, ideal.nvars);
    GroebnerBasis {
        order,
        field: ideal.field,
        nvars: ideal.nvars,
        basis: internal
            .iter()
            .map(|p| p.to_poly(ideal.field, ideal.nvars))
            .collect(),
        internal,
    }
}

/// `f` lies in the ideal iff its normal form modulo the reduced grevlex
/// basis vanishes.
pub fn ideal_membership(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    ideal.check(f)?;
    if f.is_zero() {
        return Ok(true);
    }
    Ok(buchberger(ideal, MonomialOrder::Grevlex).contains(f))
}

/// `f` lies in the radical of the ideal (over the algebraic closure of the
/// coefficient field) iff `1` lies in `I + <1 - t f>` with a fresh last
/// variable `t`.
pub fn radical_membership(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    RadicalTester::new(ideal).contains(f)
}

/// Radical membership against one fixed ideal, reusing its Gröbner basis
/// across queries.
pub struct RadicalTester {
    ideal: Ideal,
    gb: GroebnerBasis,
}

impl RadicalTester {
    pub fn new(ideal: &Ideal) -> Self {
        RadicalTester {
            ideal: ideal.clone(),
            gb: buchberger(ideal, MonomialOrder::Grevlex),
        }
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.ideal.check(f)?;
        if f.is_zero() || self.gb.is_unit() {
            return Ok(true);
        }
        if self.ideal.is_zero() {
            return Ok(false);
        }
        let reduced = self.gb.normal_form(f);
        if reduced.is_zero() {
            return Ok(true);
        }
        let order = MonomialOrder::Grevlex;
        let n = self.ideal.nvars;
        let seed: Vec<OPoly> = self.gb.internal.iter().map(|p| p.extend_vars(1)).collect();
        let mut engine = Engine::seeded(order, seed);
        let t = Polynomial::var(self.ideal.field, n + 1, n);
        let rabinowitsch =
            &Polynomial::one(self.ideal.field, n + 1) - &(&t * &reduced.extend_vars(1));
        engine.insert(&OPoly::from_poly(&rabinowitsch, order));
        engine.run();
        Ok(engine.unit)
    }
}
