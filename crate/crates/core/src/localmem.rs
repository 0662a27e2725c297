//! Decision procedures on subspaces `V` of `(S_1)^n`, the vectors of linear
//! forms in `S = F[y1, ..., yn]`.
//!
//! A subspace is given by a basis `q_1, ..., q_d`; `Q` is the `n x d`
//! matrix with these columns and `C_w = [Q | w]`. The central question is
//! whether the coordinate vector `y` lies in the image of `S.V` at every
//! point, i.e. whether `rank [Q | y](a) = rank Q(a)` for every point `a` of
//! affine space over the algebraic closure of the coefficient field.
//!
//! [`ylocal_closure`] decides this exactly with the rank stratification: for
//! each `s`, every `s x s` minor of `C_y` that uses the `y` column must lie
//! in the radical of the ideal of `s x s` minors of `Q`. For `s = d + 1`
//! that ideal is zero, so the last stratum asks that `y` lies in the span of
//! the basis over the fraction field. [`ylocal_points`] is an independent
//! oracle restricted to rational points of a prime field.
//!
//! Index sets in witnesses are zero based.

use crate::error::{Error, Result};
use crate::exactalg::{
    poly_lcm, reduce_fraction, Field, FieldScalar, Polynomial, RationalFunction,
};
use crate::groebner::{Ideal, RadicalTester};
use crate::polymat::{
    combinations, nullspace_over_field, solve_over_field, PolyMatrix, ScalarMatrix,
};

/// The vector `y = (y1, ..., yn)`.
pub fn coordinate_vector(field: Field, n: usize) -> Vec<Polynomial> {
    (0..n).map(|i| Polynomial::var(field, n, i)).collect()
}

/// `b * y` for a square scalar matrix `b`.
pub fn linear_forms_of(b: &ScalarMatrix) -> Vec<Polynomial> {
    (0..b.rows())
        .map(|i| Polynomial::linear_form(b.field(), b.row(i)))
        .collect()
}

/// A subspace of `(S_1)^n` given by `d <= n` nonzero basis vectors of
/// linear forms, together with the matrices `b_i` such that `q_i = b_i * y`.
/// The basis is not required to be independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSubspace {
    field: Field,
    n: usize,
    basis: Vec<Vec<Polynomial>>,
    coeff_matrices: Vec<ScalarMatrix>,
}

fn linear_matrix(field: Field, n: usize, v: &[Polynomial]) -> Result<ScalarMatrix> {
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} in ambient dimension {n}",
            v.len()
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for (j, p) in v.iter().enumerate() {
        if p.field() != field {
            return Err(Error::FieldMismatch(field, p.field()));
        }
        if p.nvars() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: p.nvars(),
            });
        }
        let coeffs = p.linear_coefficients().ok_or_else(|| {
            Error::Precondition(format!("component {} is not a linear form: {p}", j + 1))
        })?;
        rows.push(coeffs);
    }
    ScalarMatrix::from_rows(field, rows)
}

impl LinearSubspace {
    pub fn new(field: Field, n: usize, basis: Vec<Vec<Polynomial>>) -> Result<Self> {
        if basis.len() > n {
            return Err(Error::Precondition(format!(
                "{} basis vectors exceed n = {n}",
                basis.len()
            )));
        }
        let mut coeff_matrices = Vec::with_capacity(basis.len());
        for (i, v) in basis.iter().enumerate() {
            let b = linear_matrix(field, n, v)?;
            if b.is_zero() {
                return Err(Error::Precondition(format!(
                    "basis vector {} is zero",
                    i + 1
                )));
            }
            debug_assert_eq!(&linear_forms_of(&b), v);
            coeff_matrices.push(b);
        }
        Ok(LinearSubspace {
            field,
            n,
            basis,
            coeff_matrices,
        })
    }

    /// Subspace spanned by `b_i * y`.
    pub fn from_matrices(field: Field, n: usize, matrices: &[ScalarMatrix]) -> Result<Self> {
        let mut basis = Vec::with_capacity(matrices.len());
        for b in matrices {
            if b.rows() != n || b.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{}x{} coefficient matrix for n = {n}",
                    b.rows(),
                    b.cols()
                )));
            }
            if b.field() != field {
                return Err(Error::FieldMismatch(field, b.field()));
            }
            basis.push(linear_forms_of(b));
        }
        Self::new(field, n, basis)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Polynomial>] {
        &self.basis
    }

    pub fn coeff_matrices(&self) -> &[ScalarMatrix] {
        &self.coeff_matrices
    }

    /// The `n x d` matrix `Q` with the basis vectors as columns.
    pub fn q_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_columns(self.field, self.n, self.n, &self.basis).expect("consistent basis")
    }

    /// `C_w = [Q | w]`.
    pub fn augmented(&self, w: &[Polynomial]) -> Result<PolyMatrix> {
        self.q_matrix().with_column(w)
    }

    fn check_target(
        &self,
        target: Option<&[Polynomial]>,
    ) -> Result<(Vec<Polynomial>, ScalarMatrix)> {
        let t = match target {
            Some(t) => t.to_vec(),
            None => coordinate_vector(self.field, self.n),
        };
        let b = linear_matrix(self.field, self.n, &t)?;
        Ok((t, b))
    }
}

/// True iff `Q` has rank `d` over the fraction field, i.e. `S.V` is free of
/// rank `d`.
pub fn check_free_rank(v: &LinearSubspace) -> bool {
    v.q_matrix().rank_over_l() == v.d()
}

/// Coefficients `alpha` in the base field with `target = sum alpha_i q_i`
/// (default target `y`), or `None`.
pub fn span_over_f(
    v: &LinearSubspace,
    target: Option<&[Polynomial]>,
) -> Result<Option<Vec<FieldScalar>>> {
    let (_, bt) = v.check_target(target)?;
    let n2 = v.n * v.n;
    let mut a = ScalarMatrix::zeros(v.field, n2, v.d());
    for (i, b) in v.coeff_matrices.iter().enumerate() {
        for (k, c) in b.vectorize().into_iter().enumerate() {
            a.set(k, i, c);
        }
    }
    if v.d() == 0 {
        return Ok(bt.is_zero().then(Vec::new));
    }
    solve_over_field(&a, &bt.vectorize())
}

/// Coefficients over the fraction field expressing a target in the span of
/// a free basis, obtained by Cramer's rule on the first nonzero maximal
/// minor `det(Q_I)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CramerWitness {
    /// Row index set `I` of the minor used.
    pub index_set: Vec<usize>,
    /// `det(Q_I)`.
    pub minor: Polynomial,
    /// Reduced coefficients `h_j / k_j`.
    pub lambdas: Vec<RationalFunction>,
    /// `lcm(k_1, ..., k_d)`.
    pub m: Polynomial,
}

impl CramerWitness {
    /// Checks `sum lambda_j q_j = target` in every component and that `m`
    /// is the lcm of the denominators.
    pub fn verify(&self, v: &LinearSubspace, target: Option<&[Polynomial]>) -> Result<bool> {
        let (t, _) = v.check_target(target)?;
        if self.lambdas.len() != v.d() || self.m.is_zero() {
            return Ok(false);
        }
        let mut m = Polynomial::one(v.field, v.n);
        for l in &self.lambdas {
            m = poly_lcm(&m, l.denominator())?;
        }
        if m != self.m.monic() {
            return Ok(false);
        }
        // m * target_i == sum_j h_j * (m / k_j) * q_{j,i}
        let mut scaled = Vec::with_capacity(v.d());
        for l in &self.lambdas {
            let cofactor = match self.m.exact_div(l.denominator()) {
                Ok(c) => c,
                Err(_) => return Ok(false),
            };
            scaled.push(l.numerator().checked_mul(&cofactor)?);
        }
        for (i, ti) in t.iter().enumerate() {
            let mut rhs = Polynomial::zero(v.field, v.n);
            for (j, s) in scaled.iter().enumerate() {
                rhs = &rhs + &(s * &v.basis[j][i]);
            }
            if rhs != &self.m * ti {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Expresses the target (default `y`) over the fraction field. Returns
/// `None` when the Cramer solution on the first nonzero maximal minor does
/// not reproduce every component; since a free basis makes the solution
/// unique, the target is then outside the span over the fraction field.
pub fn span_over_l(
    v: &LinearSubspace,
    target: Option<&[Polynomial]>,
) -> Result<Option<CramerWitness>> {
    let (t, _) = v.check_target(target)?;
    let d = v.d();
    let q = v.q_matrix();
    let mut chosen = None;
    for rows in combinations(v.n, d) {
        let det = q.submatrix(&rows, &(0..d).collect::<Vec<_>>()).det()?;
        if !det.is_zero() {
            chosen = Some((rows, det));
            break;
        }
    }
    let (rows, det) = chosen
        .ok_or_else(|| Error::Precondition("no nonzero maximal minor: basis is not free".into()))?;

    let q_i = q.submatrix(&rows, &(0..d).collect::<Vec<_>>());
    let t_i: Vec<Polynomial> = rows.iter().map(|&r| t[r].clone()).collect();
    let mut mus = Vec::with_capacity(d);
    for j in 0..d {
        mus.push(q_i.replace_column(j, &t_i)?.det()?);
    }
    for (i, ti) in t.iter().enumerate() {
        let mut lhs = Polynomial::zero(v.field, v.n);
        for (j, mu) in mus.iter().enumerate() {
            lhs = &lhs + &(mu * &v.basis[j][i]);
        }
        if lhs != &det * ti {
            return Ok(None);
        }
    }
    let lambdas = mus
        .iter()
        .map(|mu| reduce_fraction(mu, &det))
        .collect::<Result<Vec<_>>>()?;
    let mut m = Polynomial::one(v.field, v.n);
    for l in &lambdas {
        m = poly_lcm(&m, l.denominator())?;
    }
    Ok(Some(CramerWitness {
        index_set: rows,
        minor: det,
        lambdas,
        m,
    }))
}

/// Per-coefficient part of [`WitnessBounds`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaCheck {
    pub numerator_degree: Option<u32>,
    pub denominator_degree: Option<u32>,
    pub homogeneous: bool,
    pub coprime: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorDivisibility {
    pub index_set: Vec<usize>,
    pub minor: Polynomial,
    pub divisible: bool,
}

/// Outcome of [`verify_witness_bounds`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessBounds {
    pub d: usize,
    pub lambdas: Vec<LambdaCheck>,
    /// Every nonzero coefficient has coprime homogeneous parts of equal
    /// degree at most `d`.
    pub degrees_ok: bool,
    pub minors: Vec<MinorDivisibility>,
    /// `m` divides `det(Q_I)` for every `d`-subset `I`.
    pub m_divides_minors: bool,
    pub m_degree: u32,
    pub m_degree_below_d: bool,
}

impl WitnessBounds {
    pub fn all_hold(&self) -> bool {
        self.degrees_ok && self.m_divides_minors && self.m_degree_below_d
    }
}

/// Checks the degree and divisibility bounds satisfied by Cramer witnesses.
/// The `deg(m) < d` flag is only guaranteed when `V` also has the local
/// membership property.
pub fn verify_witness_bounds(w: &CramerWitness, v: &LinearSubspace) -> Result<WitnessBounds> {
    if !w.verify(v, None)? {
        return Err(Error::Precondition("witness does not reproduce y".into()));
    }
    let d = v.d();
    let mut lambdas = Vec::with_capacity(d);
    for l in &w.lambdas {
        let (h, k) = (l.numerator(), l.denominator());
        let check = if h.is_zero() {
            LambdaCheck {
                numerator_degree: None,
                denominator_degree: k.total_degree(),
                homogeneous: true,
                coprime: k.is_constant(),
                ok: k.is_constant(),
            }
        } else {
            let homogeneous = h.is_homogeneous() && k.is_homogeneous();
            let coprime = crate::exactalg::poly_gcd(h, k)?.is_constant();
            let (dh, dk) = (h.total_degree(), k.total_degree());
            let ok = homogeneous && coprime && dh == dk && dh.unwrap_or(0) as usize <= d;
            LambdaCheck {
                numerator_degree: dh,
                denominator_degree: dk,
                homogeneous,
                coprime,
                ok,
            }
        };
        lambdas.push(check);
    }
    let q = v.q_matrix();
    let all_cols: Vec<usize> = (0..d).collect();
    let mut minors = Vec::new();
    for rows in combinations(v.n, d) {
        let minor = q.submatrix(&rows, &all_cols).det()?;
        let divisible = minor.is_zero() || w.m.divides(&minor);
        minors.push(MinorDivisibility {
            index_set: rows,
            minor,
            divisible,
        });
    }
    let m_degree = w.m.total_degree().unwrap_or(0);
    Ok(WitnessBounds {
        d,
        degrees_ok: lambdas.iter().all(|l| l.ok),
        lambdas,
        m_divides_minors: minors.iter().all(|m| m.divisible),
        minors,
        m_degree,
        m_degree_below_d: (m_degree as usize) < d,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecisionMethod {
    ClosureRadical,
    PointEnumeration,
}

/// Why the local membership property fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureWitness {
    /// Minor size `s`.
    pub stratum: usize,
    /// Row indices of the failing minor of `C_y`.
    pub rows: Vec<usize>,
    /// Column indices of the failing minor; the last one is the `y` column `d`.
    pub cols: Vec<usize>,
    pub minor: Polynomial,
    /// Point where `rank [Q | y]` exceeds `rank Q` (point enumeration only).
    pub point: Option<Vec<FieldScalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalDecision {
    pub holds: bool,
    pub failure: Option<FailureWitness>,
    pub method: DecisionMethod,
}

/// Decides the local membership property over the algebraic closure of the
/// coefficient field by the rank stratification of `C_y = [Q | y]`.
///
/// Strata `s = 1..=d+1` are scanned in order, and within a stratum the
/// `y`-column minors in lexicographic order of (rows, columns); the first
/// minor outside the radical of the `s x s` minor ideal of `Q` is reported.
pub fn ylocal_closure(v: &LinearSubspace) -> Result<LocalDecision> {
    let (n, d) = (v.n, v.d());
    if d >= n {
        return Err(Error::Precondition(format!(
            "need d < n, got d = {d}, n = {n}"
        )));
    }
    let q = v.q_matrix();
    let c = v.augmented(&coordinate_vector(v.field, n))?;
    for s in 1..=d + 1 {
        let mut tester: Option<RadicalTester> = None;
        for rows in combinations(n, s) {
            for q_cols in combinations(d, s - 1) {
                let mut cols = q_cols;
                cols.push(d);
                let minor = c.submatrix(&rows, &cols).det()?;
                if minor.is_zero() {
                    continue;
                }
                let t = match &mut tester {
                    Some(t) => t,
                    None => tester.insert(RadicalTester::new(&minor_ideal(&q, s)?)),
                };
                if !t.contains(&minor)? {
                    return Ok(LocalDecision {
                        holds: false,
                        failure: Some(FailureWitness {
                            stratum: s,
                            rows,
                            cols,
                            minor,
                            point: None,
                        }),
                        method: DecisionMethod::ClosureRadical,
                    });
                }
            }
        }
    }
    Ok(LocalDecision {
        holds: true,
        failure: None,
        method: DecisionMethod::ClosureRadical,
    })
}

/// Ideal generated by the `s x s` minors of `q` (zero when `s` exceeds its size).
pub fn minor_ideal(q: &PolyMatrix, s: usize) -> Result<Ideal> {
    if s > q.rows().min(q.cols()) {
        return Ok(Ideal::zero(q.field(), q.nvars()));
    }
    let gens = q.minors(s)?.into_iter().map(|m| m.value).collect();
    Ideal::new(q.field(), q.nvars(), gens)
}

fn prime_modulus(field: Field) -> Result<u64> {
    match field {
        Field::Prime(p) => Ok(p),
        Field::Rationals => Err(Error::NotPrimeField(field)),
    }
}

/// Checks `a` in the span of the `q_i(a)`; on failure returns the rank of
/// `Q(a)` together with `Q(a)` itself.
fn rank_jump_at(v: &LinearSubspace, point: &[FieldScalar]) -> Result<Option<usize>> {
    let cols: Vec<Vec<FieldScalar>> = v
        .coeff_matrices
        .iter()
        .map(|b| b.mul_vec(point))
        .collect::<Result<_>>()?;
    let mut rows: Vec<Vec<FieldScalar>> = (0..v.n)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let qa = ScalarMatrix::from_rows(v.field, rows.clone())?;
    let rank_q = if v.d() == 0 { 0 } else { qa.rank() };
    for (i, row) in rows.iter_mut().enumerate() {
        row.push(point[i].clone());
    }
    let rank_c = ScalarMatrix::from_rows(v.field, rows)?.rank();
    Ok((rank_c > rank_q).then_some(rank_q))
}

/// Local membership at the rational points of a prime field, by
/// enumerating all `p^n` points in lexicographic order. The first point
/// where `rank [Q | y](a) > rank Q(a)` is reported together with the first
/// `y`-column minor of size `rank Q(a) + 1` that does not vanish there.
pub fn ylocal_points(v: &LinearSubspace, budget: u128) -> Result<LocalDecision> {
    let p = prime_modulus(v.field)?;
    let needed = (p as u128).checked_pow(v.n as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let elements: Vec<FieldScalar> = v.field.elements()?.collect();
    let mut digits = vec![0usize; v.n];
    loop {
        let point: Vec<FieldScalar> = digits.iter().map(|&k| elements[k].clone()).collect();
        if let Some(rank_q) = rank_jump_at(v, &point)? {
            let s = rank_q + 1;
            let c = v.augmented(&coordinate_vector(v.field, v.n))?;
            for rows in combinations(v.n, s) {
                for q_cols in combinations(v.d(), s - 1) {
                    let mut cols = q_cols;
                    cols.push(v.d());
                    let minor = c.submatrix(&rows, &cols).det()?;
                    if !minor.evaluate(&point)?.is_zero() {
                        return Ok(LocalDecision {
                            holds: false,
                            failure: Some(FailureWitness {
                                stratum: s,
                                rows,
                                cols,
                                minor,
                                point: Some(point),
                            }),
                            method: DecisionMethod::PointEnumeration,
                        });
                    }
                }
            }
            unreachable!("a rank jump always has a nonvanishing augmented minor");
        }
        // next point, last coordinate fastest
        let mut k = v.n;
        loop {
            if k == 0 {
                return Ok(LocalDecision {
                    holds: true,
                    failure: None,
                    method: DecisionMethod::PointEnumeration,
                });
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < elements.len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// Names `y1..yn, c1..cd` of the variables of [`build_incidence_ideal`].
pub fn incidence_variable_names(n: usize, d: usize) -> Vec<String> {
    (1..=n)
        .map(|i| format!("y{i}"))
        .chain((1..=d).map(|i| format!("c{i}")))
        .collect()
}

/// The ideal in `F[y1..yn, c1..cd]` with generators
/// `c_1 q_{1,j} + ... + c_d q_{d,j} - y_j`, one per component `j`.
pub fn build_incidence_ideal(v: &LinearSubspace) -> Result<Ideal> {
    let (n, d) = (v.n, v.d());
    let total = n + d;
    let mut gens = Vec::with_capacity(n);
    for j in 0..n {
        let mut g = -&Polynomial::var(v.field, total, j);
        for (i, q) in v.basis.iter().enumerate() {
            let c = Polynomial::var(v.field, total, n + i);
            g = &g + &(&c * &q[j].extend_vars(d));
        }
        gens.push(g);
    }
    // keep one generator per component even when it vanishes identically
    Ideal::new(v.field, total, gens)
}

/// Writes `C_y = y_1 A_1 + ... + y_n A_n` for a basis of size `n - 1`.
pub fn pencil_decompose(v: &LinearSubspace) -> Result<Vec<ScalarMatrix>> {
    let n = v.n;
    if v.d() + 1 != n {
        return Err(Error::Precondition(format!(
            "pencil needs d = n - 1, got d = {}, n = {n}",
            v.d()
        )));
    }
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut a = ScalarMatrix::zeros(v.field, n, n);
        for (col, b) in v.coeff_matrices.iter().enumerate() {
            for r in 0..n {
                a.set(r, col, b.get(r, j).clone());
            }
        }
        a.set(j, n - 1, v.field.one());
        out.push(a);
    }
    Ok(out)
}

/// A nonzero vector in the common nullspace of the pencil, scaled so the
/// last coordinate is 1 whenever it is nonzero; `None` if the intersection
/// of the nullspaces is trivial.
pub fn common_null_test(pencil: &[ScalarMatrix]) -> Result<Option<Vec<FieldScalar>>> {
    let first = pencil
        .first()
        .ok_or_else(|| Error::Precondition("empty pencil".into()))?;
    let n = first.rows();
    if pencil
        .iter()
        .any(|a| a.rows() != n || a.cols() != n || a.field() != first.field())
    {
        return Err(Error::Precondition(
            "pencil matrices must be square of one size and field".into(),
        ));
    }
    let stacked = ScalarMatrix::vstack(pencil)?;
    let Some(mut p) = nullspace_over_field(&stacked).into_iter().next() else {
        return Ok(None);
    };
    if let Some(inv) = p.last().and_then(FieldScalar::inv) {
        p = p.iter().map(|x| x * &inv).collect();
    }
    Ok(Some(p))
}

/// Coefficients `-p_i / p_n` expressing `y` in the basis, from a common
/// null vector `p` with `p_n != 0`.
pub fn coefficients_from_null_vector(p: &[FieldScalar]) -> Option<Vec<FieldScalar>> {
    let (last, rest) = p.split_last()?;
    let inv = last.inv()?;
    Some(rest.iter().map(|x| -(x * &inv)).collect())
}

/// The family with `q1 = y - y1 e_{n-1}`, `q2 = y1 e_{n-1} - y2 e_n`,
/// `q3 = y1 e_n` and `q_j = y_j e_{j-3}` for `4 <= j <= d`. It has the local
/// membership property, a free basis, and does not contain `y`.
pub fn example_family(field: Field, n: usize, d: usize) -> Result<LinearSubspace> {
    if n < 4 || d < 3 || d >= n {
        return Err(Error::OutOfRange(format!(
            "need n >= 4 and 3 <= d < n, got n = {n}, d = {d}"
        )));
    }
    let y = coordinate_vector(field, n);
    let zero = Polynomial::zero(field, n);
    let mut q1 = y.clone();
    q1[n - 2] = &y[n - 2] - &y[0];
    let mut q2 = vec![zero.clone(); n];
    q2[n - 2] = y[0].clone();
    q2[n - 1] = -&y[1];
    let mut q3 = vec![zero.clone(); n];
    q3[n - 1] = y[0].clone();
    let mut basis = vec![q1, q2, q3];
    for j in 4..=d {
        let mut q = vec![zero.clone(); n];
        q[j - 4] = y[j - 1].clone();
        basis.push(q);
    }
    let v = LinearSubspace::new(field, n, basis)?;
    if !check_free_rank(&v) {
        return Err(Error::Precondition("example basis is not free".into()));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn y(n: usize, i: usize) -> Polynomial {
        Polynomial::var(Q, n, i - 1)
    }

    fn zero(n: usize) -> Polynomial {
        Polynomial::zero(Q, n)
    }

    fn ints(v: &[i64]) -> Vec<FieldScalar> {
        v.iter().map(|&x| Q.from_i64(x)).collect()
    }

    /// q1 = y - y2 e2 = (y1, 0, y3), q2 = y1 e2.
    fn corrected_counterexample(field: Field) -> LinearSubspace {
        let n = 3;
        let yv = coordinate_vector(field, n);
        let z = Polynomial::zero(field, n);
        LinearSubspace::new(
            field,
            n,
            vec![
                vec![yv[0].clone(), z.clone(), yv[2].clone()],
                vec![z.clone(), yv[0].clone(), z],
            ],
        )
        .unwrap()
    }

    #[test]
    fn construction_checks() {
        let n = 3;
        let bad = LinearSubspace::new(Q, n, vec![vec![&y(n, 1) * &y(n, 2), zero(n), zero(n)]]);
        assert!(matches!(bad, Err(Error::Precondition(_))));
        assert!(LinearSubspace::new(Q, n, vec![vec![zero(n); 3]]).is_err());
        assert!(LinearSubspace::new(Q, n, vec![vec![y(n, 1)]]).is_err());
        let v = LinearSubspace::new(Q, n, vec![vec![y(n, 2), y(n, 1), y(n, 3)]]).unwrap();
        assert_eq!(
            v.coeff_matrices()[0],
            ScalarMatrix::from_i64(Q, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).unwrap()
        );
    }

    #[test]
    fn free_rank_examples() {
        assert!(check_free_rank(&example_family(Q, 4, 3).unwrap()));
        let n = 3;
        let q = vec![y(n, 2), &y(n, 1) + &y(n, 3), y(n, 3)];
        let two_q = q.iter().map(|p| p.scale(&Q.from_i64(2))).collect();
        assert!(!check_free_rank(
            &LinearSubspace::new(Q, n, vec![q, two_q]).unwrap()
        ));
        assert!(check_free_rank(
            &LinearSubspace::new(Q, n, vec![coordinate_vector(Q, n)]).unwrap()
        ));
    }

    #[test]
    fn span_over_f_examples() {
        assert_eq!(
            span_over_f(&example_family(Q, 4, 3).unwrap(), None).unwrap(),
            None
        );
        let n = 3;
        let v = LinearSubspace::new(Q, n, vec![coordinate_vector(Q, n)]).unwrap();
        assert_eq!(span_over_f(&v, None).unwrap(), Some(ints(&[1])));
        let v = LinearSubspace::new(
            Q,
            n,
            vec![
                vec![y(n, 1), y(n, 2), zero(n)],
                vec![zero(n), zero(n), y(n, 3)],
            ],
        )
        .unwrap();
        assert_eq!(span_over_f(&v, None).unwrap(), Some(ints(&[1, 1])));
        let bad_target = vec![y(n, 1).pow(2), zero(n), zero(n)];
        assert!(span_over_f(&v, Some(&bad_target)).is_err());
    }

    #[test]
    fn cramer_witness_of_the_family() {
        let n = 4;
        let v = example_family(Q, n, 3).unwrap();
        let w = span_over_l(&v, None).unwrap().unwrap();
        assert_eq!(w.index_set, vec![0, 2, 3]);
        assert_eq!(w.minor, y(n, 1).pow(3));
        let one = RationalFunction::from_polynomial(&Polynomial::one(Q, n));
        assert_eq!(w.lambdas[0], one);
        assert_eq!(w.lambdas[1], one);
        assert_eq!(
            w.lambdas[2],
            RationalFunction::new(&y(n, 2), &y(n, 1)).unwrap()
        );
        assert_eq!(w.m, y(n, 1));
        assert!(w.verify(&v, None).unwrap());

        let b = verify_witness_bounds(&w, &v).unwrap();
        assert!(b.degrees_ok && b.m_divides_minors);
        assert_eq!(b.minors.len(), 4);
        assert_eq!(b.m_degree, 1);
        assert!(b.m_degree_below_d);
    }

    #[test]
    fn cramer_witness_of_the_corrected_counterexample() {
        let v = corrected_counterexample(Q);
        let n = 3;
        let w = span_over_l(&v, None).unwrap().unwrap();
        assert_eq!(
            w.lambdas[0],
            RationalFunction::from_polynomial(&Polynomial::one(Q, n))
        );
        assert_eq!(
            w.lambdas[1],
            RationalFunction::new(&y(n, 2), &y(n, 1)).unwrap()
        );
        assert_eq!(w.m, y(n, 1));
    }

    #[test]
    fn span_over_l_rejects_inconsistent_rows() {
        let n = 3;
        let v = LinearSubspace::new(
            Q,
            n,
            vec![
                vec![y(n, 2), zero(n), zero(n)],
                vec![zero(n), zero(n), y(n, 3)],
            ],
        )
        .unwrap();
        assert_eq!(span_over_l(&v, None).unwrap(), None);
        let q = vec![y(n, 2), y(n, 1), y(n, 3)];
        let dependent = LinearSubspace::new(Q, n, vec![q.clone(), q]).unwrap();
        assert!(matches!(
            span_over_l(&dependent, None),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn witness_bounds_constant_and_negative_control() {
        let n = 3;
        let yv = coordinate_vector(Q, n);
        let v = LinearSubspace::new(Q, n, vec![yv.clone()]).unwrap();
        let w = span_over_l(&v, None).unwrap().unwrap();
        let b = verify_witness_bounds(&w, &v).unwrap();
        assert_eq!(b.m_degree, 0);
        assert!(b.all_hold());

        // {y, 2y} with lambda = (y1, (1 - y1)/2): the identity holds but the
        // coefficients are not degree-zero fractions
        let two_y: Vec<_> = yv.iter().map(|p| p.scale(&Q.from_i64(2))).collect();
        let v = LinearSubspace::new(Q, n, vec![yv.clone(), two_y]).unwrap();
        let one = Polynomial::one(Q, n);
        let lam1 = RationalFunction::from_polynomial(&y(n, 1));
        let lam2 =
            RationalFunction::new(&(&one - &y(n, 1)), &Polynomial::constant(Q.from_i64(2), n))
                .unwrap();
        let w = CramerWitness {
            index_set: vec![0],
            minor: y(n, 1),
            lambdas: vec![lam1, lam2],
            m: one.clone(),
        };
        let b = verify_witness_bounds(&w, &v).unwrap();
        assert!(!b.degrees_ok);
        assert!(!b.lambdas[0].ok && !b.lambdas[1].ok);

        let bogus = CramerWitness {
            index_set: vec![0],
            minor: y(n, 1),
            lambdas: vec![
                RationalFunction::from_polynomial(&one.scale(&Q.from_i64(3))),
                RationalFunction::from_polynomial(&zero(n)),
            ],
            m: one,
        };
        assert!(verify_witness_bounds(&bogus, &v).is_err());
    }

    #[test]
    fn closure_examples() {
        let d = ylocal_closure(&example_family(Q, 4, 3).unwrap()).unwrap();
        assert!(d.holds);

        let d = ylocal_closure(&corrected_counterexample(Q)).unwrap();
        assert!(!d.holds);
        let f = d.failure.unwrap();
        assert_eq!(f.stratum, 1);
        assert_eq!(f.rows, vec![1]);
        assert_eq!(f.cols, vec![2]);
        assert_eq!(f.minor, y(3, 2));

        let v = LinearSubspace::new(Q, 3, vec![coordinate_vector(Q, 3)]).unwrap();
        assert!(ylocal_closure(&v).unwrap().holds);

        let full = LinearSubspace::new(Q, 2, vec![coordinate_vector(Q, 2), vec![y(2, 2), y(2, 1)]])
            .unwrap();
        assert!(matches!(ylocal_closure(&full), Err(Error::Precondition(_))));
    }

    #[test]
    fn points_examples() {
        let f5 = Field::prime(5).unwrap();
        assert!(
            ylocal_points(&example_family(f5, 4, 3).unwrap(), 1 << 20)
                .unwrap()
                .holds
        );

        let d = ylocal_points(&corrected_counterexample(f5), 1 << 20).unwrap();
        assert!(!d.holds);
        let f = d.failure.unwrap();
        let pt = f.point.unwrap();
        assert!(pt[0].is_zero() && !pt[1].is_zero());
        assert_eq!(pt, vec![f5.from_i64(0), f5.from_i64(1), f5.from_i64(0)]);
        assert!(!f.minor.evaluate(&pt).unwrap().is_zero());

        let f3 = Field::prime(3).unwrap();
        let v = LinearSubspace::new(f3, 3, vec![coordinate_vector(f3, 3)]).unwrap();
        assert!(ylocal_points(&v, 1000).unwrap().holds);

        assert!(matches!(
            ylocal_points(&v, 10),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            ylocal_points(&example_family(Q, 4, 3).unwrap(), 1000),
            Err(Error::NotPrimeField(_))
        ));
    }

    #[test]
    fn incidence_ideal_examples() {
        let n = 3;
        let v = LinearSubspace::new(Q, n, vec![coordinate_vector(Q, n)]).unwrap();
        let ideal = build_incidence_ideal(&v).unwrap();
        assert_eq!(ideal.generators().len(), n);
        let c1 = Polynomial::var(Q, n + 1, n);
        for (j, g) in ideal.generators().iter().enumerate() {
            let yj = Polynomial::var(Q, n + 1, j);
            assert_eq!(g, &(&(&c1 * &yj) - &yj));
        }
        assert_eq!(
            ideal.generators()[0]
                .display_with(&incidence_variable_names(n, 1))
                .to_string(),
            "y1*c1 - y1"
        );

        // at a point where y1 != 0, (a; 1, 1, a2/a1) solves the generators
        let v = example_family(Q, 4, 3).unwrap();
        let ideal = build_incidence_ideal(&v).unwrap();
        let a = ints(&[2, 3, 5, 7]);
        let alpha = vec![Q.one(), Q.one(), &a[1] / &a[0]];
        let pt: Vec<_> = a.iter().chain(&alpha).cloned().collect();
        for g in ideal.generators() {
            assert!(g.evaluate(&pt).unwrap().is_zero());
        }
    }

    #[test]
    fn pencil_examples() {
        let v = example_family(Q, 4, 3).unwrap();
        let pencil = pencil_decompose(&v).unwrap();
        let yv = coordinate_vector(Q, 4);
        let c = v.augmented(&yv).unwrap();
        for (j, a) in pencil.iter().enumerate() {
            let mut e = vec![Q.zero(); 4];
            e[j] = Q.one();
            assert_eq!(a.column(3), e);
            assert!(a.det().unwrap().is_zero());
        }
        for r in 0..4 {
            for col in 0..4 {
                let mut acc = Polynomial::zero(Q, 4);
                for (j, a) in pencil.iter().enumerate() {
                    acc = &acc + &yv[j].scale(a.get(r, col));
                }
                assert_eq!(&acc, c.get(r, col));
            }
        }
        assert_eq!(common_null_test(&pencil).unwrap(), None);
        assert!(pencil_decompose(&corrected_counterexample(Q)).is_ok());
    }

    #[test]
    fn common_null_vector_recovers_coefficients() {
        let n = 3;
        let v = LinearSubspace::new(
            Q,
            n,
            vec![
                vec![y(n, 1), y(n, 2), zero(n)],
                vec![zero(n), zero(n), y(n, 3)],
            ],
        )
        .unwrap();
        let p = common_null_test(&pencil_decompose(&v).unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(p, ints(&[-1, -1, 1]));
        assert_eq!(
            coefficients_from_null_vector(&p),
            span_over_f(&v, None).unwrap()
        );

        let zeros = vec![ScalarMatrix::zeros(Q, 3, 3); 3];
        assert_eq!(common_null_test(&zeros).unwrap(), Some(ints(&[1, 0, 0])));
        assert!(common_null_test(&[]).is_err());
    }

    #[test]
    fn example_family_ranges() {
        let v = example_family(Q, 5, 4).unwrap();
        assert_eq!(v.basis()[3][0], y(5, 4));
        assert!(check_free_rank(&v));
        assert!(matches!(example_family(Q, 3, 3), Err(Error::OutOfRange(_))));
        assert!(example_family(Q, 4, 4).is_err());
        assert!(example_family(Q, 4, 2).is_err());
    }
}
