//! Subspaces of `M_n(F)` and their relation to subspaces of `(S_1)^n`.
//!
//! A vector of linear forms `q` corresponds to the matrix `b` with
//! `q = b * y` (the flat correspondence). Under the trace pairing
//! `<a, b> = Tr(ab)`, the orthogonal complement `W` of `flat(V)` contains a
//! rank-1 idempotent `u v^T` iff `v^T b u = 0` for all `b` in `flat(V)`
//! while `v^T u = 1`, i.e. iff `u` is a point where `y` leaves the span of
//! the `q_i(u)`. So `W` is r1-free exactly when `V` has the local
//! membership property.

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldScalar, Polynomial};
use crate::localmem::{linear_forms_of, ylocal_closure, LinearSubspace, LocalDecision};
use crate::polymat::{nullspace_over_field, ScalarMatrix};

/// A subspace of `n x n` matrices with a linearly independent basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixSubspace {
    field: Field,
    n: usize,
    basis: Vec<ScalarMatrix>,
}

impl MatrixSubspace {
    /// Fails unless the basis matrices are `n x n` over `field` and
    /// linearly independent.
    pub fn new(field: Field, n: usize, basis: Vec<ScalarMatrix>) -> Result<Self> {
        check_matrices(field, n, &basis)?;
        let w = MatrixSubspace { field, n, basis };
        if w.vectorized().rank() != w.basis.len() {
            return Err(Error::Precondition(
                "basis matrices are linearly dependent".into(),
            ));
        }
        Ok(w)
    }

    /// Span of arbitrary matrices: dependent ones are dropped, keeping the
    /// first independent ones in order.
    pub fn span(field: Field, n: usize, matrices: &[ScalarMatrix]) -> Result<Self> {
        check_matrices(field, n, matrices)?;
        let mut basis: Vec<ScalarMatrix> = Vec::new();
        for m in matrices {
            basis.push(m.clone());
            let w = MatrixSubspace {
                field,
                n,
                basis: basis.clone(),
            };
            if w.vectorized().rank() < basis.len() {
                basis.pop();
            }
        }
        Ok(MatrixSubspace { field, n, basis })
    }

    /// All of `M_n(F)`, spanned by the matrix units in row-major order.
    pub fn full(field: Field, n: usize) -> Self {
        let basis = (0..n * n)
            .map(|k| ScalarMatrix::unit(field, n, k / n, k % n))
            .collect();
        MatrixSubspace { field, n, basis }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[ScalarMatrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.n * self.n - self.basis.len()
    }

    /// The `dim x n^2` matrix whose rows are the row-major vectorized basis.
    pub fn vectorized(&self) -> ScalarMatrix {
        let rows = self.basis.iter().map(ScalarMatrix::vectorize).collect();
        if self.basis.is_empty() {
            return ScalarMatrix::zeros(self.field, 0, self.n * self.n);
        }
        ScalarMatrix::from_rows(self.field, rows).expect("square basis matrices")
    }

    pub fn contains(&self, m: &ScalarMatrix) -> Result<bool> {
        check_matrices(self.field, self.n, std::slice::from_ref(m))?;
        let with = ScalarMatrix::vstack(&[
            self.vectorized(),
            ScalarMatrix::new(self.field, 1, self.n * self.n, m.vectorize())?,
        ])?;
        Ok(with.rank() == self.dim())
    }

    /// Equality as subspaces (bases may differ).
    pub fn same_subspace(&self, other: &MatrixSubspace) -> Result<bool> {
        if self.field != other.field || self.n != other.n {
            return Ok(false);
        }
        if self.dim() != other.dim() {
            return Ok(false);
        }
        for m in &other.basis {
            if !self.contains(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Image of a subspace over the rationals in `F_p`. Fails when an entry
    /// has a denominator divisible by `p` or the basis becomes dependent.
    pub fn reduce_mod(&self, p: u64) -> Result<MatrixSubspace> {
        let target = Field::prime(p)?;
        if self.field != Field::Rationals {
            return Err(Error::Precondition(format!(
                "reduction from {} to {target}",
                self.field
            )));
        }
        let basis = self
            .basis
            .iter()
            .map(|m| reduce_matrix(m, target))
            .collect::<Result<Vec<_>>>()?;
        MatrixSubspace::new(target, self.n, basis)
            .map_err(|_| Error::Precondition(format!("basis becomes dependent modulo {p}")))
    }
}

fn check_matrices(field: Field, n: usize, matrices: &[ScalarMatrix]) -> Result<()> {
    for m in matrices {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix in a subspace of {n}x{n} matrices",
                m.rows(),
                m.cols()
            )));
        }
        if m.field() != field {
            return Err(Error::FieldMismatch(field, m.field()));
        }
    }
    Ok(())
}

fn reduce_matrix(m: &ScalarMatrix, target: Field) -> Result<ScalarMatrix> {
    let rows = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| {
                    let q = x.as_rational().ok_or(Error::NotPrimeField(x.field()))?;
                    target.from_rational(q)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ScalarMatrix::from_rows(target, rows)
}

/// A rank-1 idempotent `u v^T` with `v^T u = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank1Idempotent {
    pub u: Vec<FieldScalar>,
    pub v: Vec<FieldScalar>,
}

impl Rank1Idempotent {
    pub fn matrix(&self) -> ScalarMatrix {
        ScalarMatrix::outer(&self.u, &self.v)
    }

    /// `v^T u = 1`, which makes `u v^T` idempotent of rank 1.
    pub fn is_valid(&self) -> bool {
        if self.u.len() != self.v.len() || self.u.is_empty() {
            return false;
        }
        let field = self.u[0].field();
        if self.u.iter().chain(&self.v).any(|x| x.field() != field) {
            return false;
        }
        let dot = self
            .u
            .iter()
            .zip(&self.v)
            .fold(field.zero(), |acc, (a, b)| &acc + &(a * b));
        dot.is_one()
    }
}

/// `flat(V)`: the coefficient matrices `b_i` with `q_i = b_i * y`.
/// Dependent basis vectors of `V` are skipped.
pub fn flat(v: &LinearSubspace) -> MatrixSubspace {
    MatrixSubspace::span(v.field(), v.n(), v.coeff_matrices())
        .expect("coefficient matrices are n x n")
}

/// `b * y` as a vector of linear forms.
pub fn unflat(b: &ScalarMatrix) -> Result<Vec<Polynomial>> {
    if !b.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "unflat of a {}x{} matrix",
            b.rows(),
            b.cols()
        )));
    }
    Ok(linear_forms_of(b))
}

/// `<a, b> = Tr(ab)`.
pub fn trace_pairing(a: &ScalarMatrix, b: &ScalarMatrix) -> Result<FieldScalar> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "trace pairing of {}x{} and {}x{} matrices",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(a.mul(b)?.trace())
}

/// Orthogonal complement under the trace pairing. Since
/// `Tr(ab) = vec(a^T) . vec(b)`, it is the nullspace of the matrix with
/// rows `vec(a_k^T)`.
pub fn perp(w: &MatrixSubspace) -> MatrixSubspace {
    let n = w.n;
    let gram = if w.basis.is_empty() {
        ScalarMatrix::zeros(w.field, 0, n * n)
    } else {
        ScalarMatrix::from_rows(
            w.field,
            w.basis.iter().map(|a| a.transpose().vectorize()).collect(),
        )
        .expect("square basis matrices")
    };
    let basis = nullspace_over_field(&gram)
        .into_iter()
        .map(|x| ScalarMatrix::new(w.field, n, n, x).expect("n^2 entries"))
        .collect();
    MatrixSubspace {
        field: w.field,
        n,
        basis,
    }
}

/// Outcome of an r1-freeness decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct R1FreeDecision {
    /// `W` contains no rank-1 idempotent over the algebraic closure.
    pub r1_free: bool,
    /// `V = unflat(perp(W))`, absent for codimension 0.
    pub subspace: Option<LinearSubspace>,
    /// The local membership decision for `V`.
    pub local: Option<LocalDecision>,
    /// A rank-1 idempotent in `W`, when one is known explicitly.
    pub idempotent: Option<Rank1Idempotent>,
}

/// Decides r1-freeness of `W` of codimension `d < n` through the local
/// membership property of `V = unflat(perp(W))`. Codimension 0 means
/// `W = M_n(F)`, which contains `E_11`.
pub fn is_r1_free_closure(w: &MatrixSubspace) -> Result<R1FreeDecision> {
    let d = w.codim();
    if d >= w.n {
        return Err(Error::Precondition(format!(
            "need codimension < n, got {d} for n = {}",
            w.n
        )));
    }
    if d == 0 {
        let mut e1 = vec![w.field.zero(); w.n];
        e1[0] = w.field.one();
        return Ok(R1FreeDecision {
            r1_free: false,
            subspace: None,
            local: None,
            idempotent: Some(Rank1Idempotent {
                u: e1.clone(),
                v: e1,
            }),
        });
    }
    let c = perp(w);
    let v = LinearSubspace::from_matrices(w.field, w.n, c.basis())?;
    let local = ylocal_closure(&v)?;
    Ok(R1FreeDecision {
        r1_free: local.holds,
        subspace: Some(v),
        local: Some(local),
        idempotent: None,
    })
}

/// Exhaustive search for a rank-1 idempotent `u v^T` in `W` over `F_p`.
///
/// `u` runs over the vectors whose first nonzero entry is 1 and `v` over
/// all vectors with `v^T u = 1`, both in lexicographic order of their
/// representatives in `[0, p)`; the first hit is returned. The cost is
/// counted as `p^(2n)` candidates.
pub fn find_rank1_idempotent_bruteforce(
    w: &MatrixSubspace,
    budget: u128,
) -> Result<Option<Rank1Idempotent>> {
    let p = match w.field {
        Field::Prime(p) => p,
        Field::Rationals => return Err(Error::NotPrimeField(w.field)),
    };
    let n = w.n;
    let needed = (p as u128).checked_pow(2 * n as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    // u v^T lies in W iff every functional annihilating vec(W) vanishes on it
    let annihilators: Vec<Vec<u64>> = nullspace_over_field(&w.vectorized())
        .iter()
        .map(|f| f.iter().map(residue).collect())
        .collect();

    let mut u = vec![0u64; n];
    // successor in lexicographic order within the representatives of
    // projective points: the first nonzero entry stays 1
    let next_u = |u: &mut Vec<u64>| -> bool {
        let lead = u.iter().position(|&x| x != 0);
        for k in (0..n).rev() {
            if Some(k) == lead {
                break;
            }
            u[k] += 1;
            if u[k] < p {
                return true;
            }
            u[k] = 0;
        }
        // move the leading 1 one step to the right
        match lead {
            Some(l) if l + 1 < n => {
                u.iter_mut().for_each(|x| *x = 0);
                u[l + 1] = 1;
                true
            }
            _ => false,
        }
    };
    u[0] = 1;
    loop {
        // g[f][j] = sum_i f[i*n + j] * u_i, so the condition reads g[f] . v = 0
        let g: Vec<Vec<u64>> = annihilators
            .iter()
            .map(|f| {
                (0..n)
                    .map(|j| (0..n).fold(0u64, |acc, i| (acc + f[i * n + j] * u[i]) % p))
                    .collect()
            })
            .collect();
        let mut v = vec![0u64; n];
        loop {
            let dot = |a: &[u64]| a.iter().zip(&v).fold(0u64, |acc, (x, y)| (acc + x * y) % p);
            if dot(&u) == 1 && g.iter().all(|row| dot(row) == 0) {
                let lift = |x: &[u64]| {
                    x.iter()
                        .map(|&value| FieldScalar::Prime { value, modulus: p })
                        .collect()
                };
                return Ok(Some(Rank1Idempotent {
                    u: lift(&u),
                    v: lift(&v),
                }));
            }
            let mut k = n;
            let mut done = true;
            while k > 0 {
                k -= 1;
                v[k] += 1;
                if v[k] < p {
                    done = false;
                    break;
                }
                v[k] = 0;
            }
            if done {
                break;
            }
        }
        if !next_u(&mut u) {
            return Ok(None);
        }
    }
}

fn residue(x: &FieldScalar) -> u64 {
    match x {
        FieldScalar::Prime { value, .. } => *value,
        FieldScalar::Rational(_) => unreachable!("prime field checked"),
    }
}

/// True iff every basis matrix has trace 0, i.e. `W` lies in `I^perp`.
pub fn is_subspace_of_tracezero(w: &MatrixSubspace) -> bool {
    w.basis.iter().all(|m| m.trace().is_zero())
}
