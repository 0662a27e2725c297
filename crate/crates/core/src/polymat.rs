//! Exact linear algebra over the polynomial ring, its fraction field and the
//! base field.
//!
//! Polynomial determinants and ranks use Bareiss fraction-free elimination
//! with exact polynomial division; scalar matrices use ordinary Gaussian
//! elimination. Pivots are always the first nonzero candidate so every
//! result is reproducible. All row and column indices are zero based.

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldScalar, Polynomial};

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Dense matrix of scalars from a single field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScalarMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<FieldScalar>,
}

impl ScalarMatrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<FieldScalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(ScalarMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<FieldScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integer rows.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Matrix unit `E_ij` (zero based).
    pub fn unit(field: Field, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        m.set(i, j, field.one());
        m
    }

    /// `u * v^T`.
    pub fn outer(u: &[FieldScalar], v: &[FieldScalar]) -> Self {
        let field = u
            .first()
            .or(v.first())
            .map_or(Field::Rationals, FieldScalar::field);
        let entries = u
            .iter()
            .flat_map(|a| v.iter().map(move |b| a * b))
            .collect();
        ScalarMatrix {
            field,
            rows: u.len(),
            cols: v.len(),
            entries,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldScalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldScalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldScalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major flattening.
    pub fn vectorize(&self) -> Vec<FieldScalar> {
        self.entries.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldScalar::is_zero)
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut t = ScalarMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ScalarMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[FieldScalar]) -> Result<Vec<FieldScalar>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn add(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        ScalarMatrix::new(self.field, self.rows, self.cols, entries)
    }

    pub fn scale(&self, c: &FieldScalar) -> ScalarMatrix {
        ScalarMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn trace(&self) -> FieldScalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ScalarMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<FieldScalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..m.rows {
                let factor = m.get(i, c) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Columns stacked side by side.
    pub fn hstack(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts".into()));
        }
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(other.row(i)).cloned().collect())
            .collect();
        ScalarMatrix::from_rows(self.field, rows)
    }

    /// Rows stacked on top of each other.
    pub fn vstack(parts: &[ScalarMatrix]) -> Result<ScalarMatrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::DimensionMismatch("vstack of nothing".into()))?;
        if parts.iter().any(|p| p.cols != first.cols) {
            return Err(Error::DimensionMismatch("vstack column counts".into()));
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let entries = parts
            .iter()
            .flat_map(|p| p.entries.iter().cloned())
            .collect();
        ScalarMatrix::new(first.field, rows, first.cols, entries)
    }
}

/// Some solution of `a * x = b`, with free variables set to zero; `None`
/// when the system is inconsistent.
pub fn solve_over_field(a: &ScalarMatrix, b: &[FieldScalar]) -> Result<Option<Vec<FieldScalar>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            a.rows()
        )));
    }
    let rhs = ScalarMatrix::new(a.field(), a.rows(), 1, b.to_vec())?;
    let (r, pivots) = a.hstack(&rhs)?.rref();
    if pivots.last() == Some(&a.cols()) {
        return Ok(None);
    }
    let mut x = vec![a.field().zero(); a.cols()];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = r.get(row, a.cols()).clone();
    }
    Ok(Some(x))
}

/// Basis of the right nullspace: one vector per free column, with that
/// free variable set to 1 and the others to 0.
pub fn nullspace_over_field(a: &ScalarMatrix) -> Vec<Vec<FieldScalar>> {
    let (r, pivots) = a.rref();
    let field = a.field();
    (0..a.cols())
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![field.zero(); a.cols()];
            v[free] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            v
        })
        .collect()
}

/// An `s x s` minor with its row and column index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: Polynomial,
}

/// Matrix of polynomials sharing one field and variable count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    field: Field,
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(
        field: Field,
        nvars: usize,
        rows: usize,
        cols: usize,
        entries: Vec<Polynomial>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            if e.field() != field {
                return Err(Error::FieldMismatch(field, e.field()));
            }
            if e.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: e.nvars(),
                });
            }
        }
        Ok(PolyMatrix {
            field,
            nvars,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(field: Field, nvars: usize, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, nvars, r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose `j`-th column is `columns[j]`; all columns of length `rows`.
    pub fn from_columns(
        field: Field,
        nvars: usize,
        rows: usize,
        columns: &[Vec<Polynomial>],
    ) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("column length".into()));
        }
        let entries = (0..rows)
            .flat_map(|i| columns.iter().map(move |c| c[i].clone()))
            .collect();
        Self::new(field, nvars, rows, columns.len(), entries)
    }

    pub fn identity(field: Field, nvars: usize, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    Polynomial::one(field, nvars)
                } else {
                    Polynomial::zero(field, nvars)
                }
            })
            .collect();
        PolyMatrix {
            field,
            nvars,
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        PolyMatrix {
            field: self.field,
            nvars: self.nvars,
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Appends a column.
    pub fn with_column(&self, column: &[Polynomial]) -> Result<PolyMatrix> {
        let mut columns: Vec<Vec<Polynomial>> = (0..self.cols).map(|j| self.column(j)).collect();
        columns.push(column.to_vec());
        PolyMatrix::from_columns(self.field, self.nvars, self.rows, &columns)
    }

    /// Copy with column `j` replaced.
    pub fn replace_column(&self, j: usize, column: &[Polynomial]) -> Result<PolyMatrix> {
        if column.len() != self.rows {
            return Err(Error::DimensionMismatch("column length".into()));
        }
        let mut m = self.clone();
        for (i, p) in column.iter().enumerate() {
            m.entries[i * self.cols + j] = p.clone();
        }
        Ok(m)
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::one(self.field, self.nvars));
        }
        let mut m: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = Polynomial::one(self.field, self.nvars);
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(Polynomial::zero(self.field, self.nvars));
            };
            if p != k {
                m.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = Polynomial::zero(self.field, self.nvars);
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// All `s x s` minors, ordered lexicographically by (row set, column set).
    pub fn minors(&self, s: usize) -> Result<Vec<Minor>> {
        if s == 0 || s > self.rows.min(self.cols) {
            return Err(Error::OutOfRange(format!(
                "minor size {s} for a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let col_sets = combinations(self.cols, s);
        let mut out = Vec::new();
        for rows in combinations(self.rows, s) {
            for cols in &col_sets {
                let value = self.submatrix(&rows, cols).det()?;
                out.push(Minor {
                    rows: rows.clone(),
                    cols: cols.clone(),
                    value,
                });
            }
        }
        Ok(out)
    }

    /// Rank over the fraction field, by fraction-free elimination. Each
    /// column contributes a pivot from the first remaining row that is
    /// nonzero in it.
    pub fn rank_over_l(&self) -> usize {
        let mut m: Vec<Vec<Polynomial>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut prev = Polynomial::one(self.field, self.nvars);
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(p, r);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = &(&m[i][j] * &m[r][c]) - &(&m[i][c] * &m[r][j]);
                    m[i][j] = num
                        .exact_div(&prev)
                        .expect("fraction-free division is exact");
                }
                m[i][c] = Polynomial::zero(self.field, self.nvars);
            }
            prev = m[r][c].clone();
            r += 1;
        }
        r
    }

    /// Entrywise evaluation at a point.
    pub fn evaluate(&self, point: &[FieldScalar]) -> Result<ScalarMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.evaluate(point))
            .collect::<Result<Vec<_>>>()?;
        ScalarMatrix::new(self.field, self.rows, self.cols, entries)
    }
}
