//! Line-oriented instance files.
//!
//! ```text
//! # comments start with '#'
//! field Q            # or: field Fp 5
//! n 4
//! kind linear-subspace
//! q1 = [y1, y2, y3 - y1, y4]
//! q2 = [0, 0, y1, -y2]
//! end
//! ```
//!
//! Matrix subspaces use `kind matrix-subspace` and rows of scalar
//! expressions: `b1 = [[0, 1], [1, 0]]`. Expressions accept `+ - * /`,
//! `^` with an integer exponent, parentheses, integer literals and the
//! variables `y1..yn`; division is only by nonzero constants.

use std::fmt;

use num_bigint::BigInt;

use ylocal_core::localmem::LinearSubspace;
use ylocal_core::matspace::MatrixSubspace;
use ylocal_core::polymat::ScalarMatrix;
use ylocal_core::{Field, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    LinearSubspace,
    MatrixSubspace,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::LinearSubspace => "linear-subspace",
            Kind::MatrixSubspace => "matrix-subspace",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Vector(Vec<Polynomial>),
    Matrix(ScalarMatrix),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub field: Field,
    pub n: usize,
    pub kind: Kind,
    /// Basis entries with their labels, in file order.
    pub entries: Vec<(String, Entry)>,
}

impl InstanceFile {
    pub fn from_linear(v: &LinearSubspace) -> Self {
        InstanceFile {
            field: v.field(),
            n: v.n(),
            kind: Kind::LinearSubspace,
            entries: v
                .basis()
                .iter()
                .enumerate()
                .map(|(i, q)| (format!("q{}", i + 1), Entry::Vector(q.clone())))
                .collect(),
        }
    }

    pub fn from_matrices(w: &MatrixSubspace) -> Self {
        InstanceFile {
            field: w.field(),
            n: w.n(),
            kind: Kind::MatrixSubspace,
            entries: w
                .basis()
                .iter()
                .enumerate()
                .map(|(i, b)| (format!("b{}", i + 1), Entry::Matrix(b.clone())))
                .collect(),
        }
    }

    pub fn linear_subspace(&self) -> ylocal_core::Result<LinearSubspace> {
        let basis = self
            .entries
            .iter()
            .filter_map(|(_, e)| match e {
                Entry::Vector(v) => Some(v.clone()),
                Entry::Matrix(_) => None,
            })
            .collect();
        LinearSubspace::new(self.field, self.n, basis)
    }

    pub fn matrix_subspace(&self) -> ylocal_core::Result<MatrixSubspace> {
        let basis = self
            .entries
            .iter()
            .filter_map(|(_, e)| match e {
                Entry::Matrix(m) => Some(m.clone()),
                Entry::Vector(_) => None,
            })
            .collect();
        MatrixSubspace::new(self.field, self.n, basis)
    }
}

impl fmt::Display for InstanceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        writeln!(f, "n {}", self.n)?;
        writeln!(f, "kind {}", self.kind.name())?;
        for (label, e) in &self.entries {
            match e {
                Entry::Vector(v) => {
                    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                    writeln!(f, "{label} = [{}]", parts.join(", "))?;
                }
                Entry::Matrix(m) => {
                    let rows: Vec<String> = (0..m.rows())
                        .map(|i| {
                            let r: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
                            format!("[{}]", r.join(", "))
                        })
                        .collect();
                    writeln!(f, "{label} = [{}]", rows.join(", "))?;
                }
            }
        }
        writeln!(f, "end")
    }
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, ParseError> {
    let mut field = None;
    let mut n = None;
    let mut kind = None;
    let mut entries: Vec<(String, Entry)> = Vec::new();
    let mut ended = false;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col0 = content.len() - content.trim_start().len() + 1;
        if ended {
            return Err(ParseError::new(line_no, col0, "content after 'end'"));
        }
        let (word, rest) = split_word(trimmed);
        let rest_col = col0 + (trimmed.len() - rest.len());
        match word {
            "end" => {
                if !rest.trim().is_empty() {
                    return Err(ParseError::new(
                        line_no,
                        rest_col,
                        "unexpected text after 'end'",
                    ));
                }
                ended = true;
            }
            "field" => {
                if field.is_some() {
                    return Err(ParseError::new(line_no, col0, "duplicate 'field' line"));
                }
                field = Some(parse_field(rest, line_no, rest_col)?);
            }
            "n" => {
                if n.is_some() {
                    return Err(ParseError::new(line_no, col0, "duplicate 'n' line"));
                }
                let v: usize = rest
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&v| v >= 1)
                    .ok_or_else(|| {
                        ParseError::new(line_no, rest_col, "n must be a positive integer")
                    })?;
                n = Some(v);
            }
            "kind" => {
                if kind.is_some() {
                    return Err(ParseError::new(line_no, col0, "duplicate 'kind' line"));
                }
                kind = Some(match rest.trim() {
                    "linear-subspace" => Kind::LinearSubspace,
                    "matrix-subspace" => Kind::MatrixSubspace,
                    other => {
                        return Err(ParseError::new(
                            line_no,
                            rest_col,
                            format!("unknown kind '{other}'"),
                        ))
                    }
                });
            }
            _ => {
                let Some(eq) = trimmed.find('=') else {
                    return Err(ParseError::new(
                        line_no,
                        col0,
                        format!("unrecognized line starting with '{word}'"),
                    ));
                };
                let label = trimmed[..eq].trim();
                let (field, n) = match (field, n) {
                    (Some(f), Some(n)) => (f, n),
                    _ => {
                        return Err(ParseError::new(
                            line_no,
                            col0,
                            "basis lines must follow the 'field' and 'n' headers",
                        ))
                    }
                };
                let kind = *kind.get_or_insert(Kind::LinearSubspace);
                let prefix = match kind {
                    Kind::LinearSubspace => 'q',
                    Kind::MatrixSubspace => 'b',
                };
                let valid_label = label.len() > 1
                    && label.starts_with(prefix)
                    && label[1..].chars().all(|c| c.is_ascii_digit());
                if !valid_label {
                    return Err(ParseError::new(
                        line_no,
                        col0,
                        format!("expected a label like {prefix}1 for a {}", kind.name()),
                    ));
                }
                if entries.iter().any(|(l, _)| l == label) {
                    return Err(ParseError::new(
                        line_no,
                        col0,
                        format!("duplicate basis label '{label}'"),
                    ));
                }
                let body_col = col0 + eq + 1;
                let body = &trimmed[eq + 1..];
                let mut p = Parser::new(body, field, n, line_no, body_col);
                let entry = match kind {
                    Kind::LinearSubspace => Entry::Vector(p.vector(n)?),
                    Kind::MatrixSubspace => Entry::Matrix(p.matrix(n)?),
                };
                p.finish()?;
                entries.push((label.to_string(), entry));
            }
        }
    }
    let field =
        field.ok_or_else(|| ParseError::new(last_line.max(1), 1, "missing 'field' line"))?;
    let n = n.ok_or_else(|| ParseError::new(last_line.max(1), 1, "missing 'n' line"))?;
    Ok(InstanceFile {
        field,
        n,
        kind: kind.unwrap_or(Kind::LinearSubspace),
        entries,
    })
}

fn split_word(s: &str) -> (&str, &str) {
    let end = s
        .find(|c: char| c.is_whitespace() || c == '=')
        .unwrap_or(s.len());
    (&s[..end], &s[end..])
}

fn parse_field(rest: &str, line: usize, col: usize) -> Result<Field, ParseError> {
    let words: Vec<&str> = rest.split_whitespace().collect();
    match words.as_slice() {
        ["Q"] => Ok(Field::Rationals),
        ["Fp", p] => {
            let p: u64 = p
                .parse()
                .map_err(|_| ParseError::new(line, col, format!("invalid modulus '{p}'")))?;
            Field::prime(p)
                .map_err(|_| ParseError::new(line, col, format!("modulus not prime: {p}")))
        }
        _ => Err(ParseError::new(
            line,
            col,
            "expected 'field Q' or 'field Fp <prime>'",
        )),
    }
}

/// Parses a standalone polynomial expression in `y1..yn`.
pub fn parse_polynomial(text: &str, field: Field, n: usize) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(text, field, n, 1, 1);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: Field,
    n: usize,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, field: Field, n: usize, line: usize, col: usize) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            field,
            n,
            line,
            col,
        }
    }

    fn err_at(&self, pos: usize, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col + pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err_at(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err_at(self.pos, format!("unexpected '{}'", c as char))),
        }
    }

    fn vector(&mut self, n: usize) -> Result<Vec<Polynomial>, ParseError> {
        let start = self.pos;
        let items = self.list(|p| {
            let at = p.pos;
            let e = p.expr()?;
            if !e.is_zero() && e.homogeneous_degree() != Some(1) {
                p.skip_ws_from(at);
                return Err(p.err_at(p.pos, format!("component not a linear form: {e}")));
            }
            Ok(e)
        })?;
        if items.len() != n {
            return Err(self.err_at(
                start,
                format!("expected {n} components, found {}", items.len()),
            ));
        }
        Ok(items)
    }

    fn skip_ws_from(&mut self, at: usize) {
        self.pos = at;
        self.skip_ws();
    }

    fn matrix(&mut self, n: usize) -> Result<ScalarMatrix, ParseError> {
        let start = self.pos;
        let rows = self.list(|p| {
            let row_start = p.pos;
            let row = p.list(|q| {
                let at = q.pos;
                let e = q.expr()?;
                if !e.is_constant() {
                    q.skip_ws_from(at);
                    return Err(q.err_at(q.pos, format!("matrix entry is not a constant: {e}")));
                }
                Ok(e.constant_term())
            })?;
            if row.len() != n {
                return Err(p.err_at(
                    row_start,
                    format!("expected {n} entries in a row, found {}", row.len()),
                ));
            }
            Ok(row)
        })?;
        if rows.len() != n {
            return Err(self.err_at(start, format!("expected {n} rows, found {}", rows.len())));
        }
        Ok(ScalarMatrix::from_rows(self.field, rows).expect("square rows"))
    }

    fn list<T>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err_at(self.pos, "expected ',' or ']'")),
            }
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let inv = if d.is_constant() {
                        d.constant_term().inv()
                    } else {
                        None
                    };
                    let Some(inv) = inv else {
                        return Err(self.err_at(at, "division only by a nonzero constant"));
                    };
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let digits = self.digits();
            let e: u32 = digits
                .parse()
                .ok()
                .filter(|&e| e <= 64)
                .ok_or_else(|| self.err_at(at, "expected an exponent between 0 and 64"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let v: BigInt = digits
                    .parse()
                    .map_err(|_| self.err_at(at, format!("invalid integer '{digits}'")))?;
                Ok(Polynomial::constant(self.field.from_bigint(&v), self.n))
            }
            Some(b'y') => {
                self.pos += 1;
                let d_at = self.pos;
                let digits = self.digits();
                let i: usize = digits
                    .parse()
                    .map_err(|_| self.err_at(d_at, "expected a variable index after 'y'"))?;
                if i == 0 || i > self.n {
                    return Err(
                        self.err_at(at, format!("variable y{i} out of range for n = {}", self.n))
                    );
                }
                Ok(Polynomial::var(self.field, self.n, i - 1))
            }
            Some(c) => Err(self.err_at(at, format!("unexpected '{}'", c as char))),
            None => Err(self.err_at(at, "unexpected end of expression")),
        }
    }
}
