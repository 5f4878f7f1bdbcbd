//! Line-oriented definition files.
//!
//! ```text
//! algebra NAME over (Q|Fp:P) dim N
//! [i,j] = c1*k1 + c2*k2 ...        # 1-based indices, coefficients a or a/b
//! rep NAME on dim M
//! phi i = [[..],[..]]
//!
//! ring NAME factors m1,m2,...
//! [i,j] = c*k ...                   # integer coefficients
//! ```
//!
//! Omitted brackets are zero and `[j,i]` is filled in by antisymmetry.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::LieAlgebra;
use crate::constructions::Representation;
use crate::error::Error;
use crate::exactlin::{Field, Matrix, Scalar, Vector};
use crate::finring::FiniteLieRing;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: {message}")]
    Conflict { line: usize, message: String },
    #[error("line {line}: {source}")]
    Semantic { line: usize, source: Error },
    #[error("{0}")]
    Invalid(Error),
}

impl FormatError {
    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::Syntax { line, .. } | FormatError::Conflict { line, .. } | FormatError::Semantic { line, .. } => {
                Some(*line)
            }
            FormatError::Invalid(_) => None,
        }
    }
}

type PResult<T> = std::result::Result<T, FormatError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepBlock {
    pub name: String,
    pub dim: usize,
    /// 0-based generator index to matrix; absent generators act by zero.
    pub phi: BTreeMap<usize, Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Algebra {
        field: Field,
        dim: usize,
        /// Keys `(i, j)` with `i < j`, 0-based.
        brackets: BTreeMap<(usize, usize), Vector>,
        reps: Vec<RepBlock>,
    },
    Ring {
        factors: Vec<u64>,
        brackets: BTreeMap<(usize, usize), Vec<u64>>,
    },
}

/// A parsed file: brackets normalized to `i < j`, not yet validated for Jacobi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefinitionFile {
    pub name: String,
    pub body: Body,
}

#[derive(Clone, Debug)]
pub enum Definition {
    Algebra {
        algebra: LieAlgebra,
        reps: Vec<(String, Representation)>,
    },
    Ring(FiniteLieRing),
}

impl Definition {
    pub fn name(&self) -> &str {
        match self {
            Definition::Algebra { algebra, .. } => algebra.name(),
            Definition::Ring(r) => r.name(),
        }
    }
}

/// Parses and validates in one step.
pub fn load(text: &str) -> PResult<Definition> {
    parse(text)?.build()
}

struct Cursor<'a> {
    line: usize,
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str) -> Cursor<'a> {
        Cursor {
            line,
            chars: text.char_indices().collect(),
            pos: 0,
            text,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(FormatError::Syntax {
            line: self.line,
            column: self.column(),
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => self.error(format!("expected '{c}', found '{d}'")),
            None => self.error(format!("expected '{c}', found end of line")),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> PResult<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && !self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a word");
        }
        let from = self.chars[start].0;
        let to = self.chars.get(self.pos).map_or(self.text.len(), |c| c.0);
        Ok(&self.text[from..to])
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        let col = {
            self.skip_ws();
            self.column()
        };
        let w = self.word()?;
        if w != kw {
            return Err(FormatError::Syntax {
                line: self.line,
                column: col,
                message: format!("expected '{kw}', found '{w}'"),
            });
        }
        Ok(())
    }

    fn digits(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn usize(&mut self) -> PResult<usize> {
        let col = {
            self.skip_ws();
            self.column()
        };
        let n = self.digits()?;
        usize::try_from(n).map_err(|_| FormatError::Syntax {
            line: self.line,
            column: col,
            message: "number too large".into(),
        })
    }

    /// `a` or `a/b`, unsigned.
    fn ratio(&mut self) -> PResult<(BigInt, BigInt)> {
        let num = self.digits()?;
        if self.eat('/') {
            let col = self.column();
            let den = self.digits()?;
            if den.is_zero() {
                return Err(FormatError::Syntax {
                    line: self.line,
                    column: col,
                    message: "zero denominator".into(),
                });
            }
            return Ok((num, den));
        }
        Ok((num, BigInt::one()))
    }

    fn signed_ratio(&mut self) -> PResult<(BigInt, BigInt)> {
        let neg = self.eat('-');
        let (n, d) = self.ratio()?;
        Ok((if neg { -n } else { n }, d))
    }

    /// A 1-based basis index, optionally written `e3` or `g3`.
    fn index(&mut self, bound: usize) -> PResult<usize> {
        if matches!(self.peek(), Some('e' | 'g')) {
            self.pos += 1;
        }
        let col = self.column();
        let k = self.usize()?;
        if k == 0 || k > bound {
            return Err(FormatError::Syntax {
                line: self.line,
                column: col,
                message: format!("index {k} out of range 1..={bound}"),
            });
        }
        Ok(k - 1)
    }

    /// `[i,j]`, 0-based result.
    fn pair(&mut self, bound: usize) -> PResult<(usize, usize)> {
        self.expect('[')?;
        let i = self.index(bound)?;
        self.expect(',')?;
        let j = self.index(bound)?;
        self.expect(']')?;
        Ok((i, j))
    }

    /// `0` or a signed sum of terms `c*k` / `k`.
    fn terms(&mut self, bound: usize) -> PResult<Vec<((BigInt, BigInt), usize)>> {
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let neg = if first {
                self.eat('-')
            } else if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else if self.at_end() {
                break;
            } else {
                let c = self.peek().expect("not at end");
                return self.error(format!("expected '+' or '-', found '{c}'"));
            };
            first = false;
            let save = self.pos;
            let mut coef = (BigInt::one(), BigInt::one());
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                let r = self.ratio()?;
                if self.eat('*') {
                    coef = r;
                } else {
                    if r.1.is_one() && r.0.is_zero() && out.is_empty() && !neg && self.at_end() {
                        return Ok(out);
                    }
                    self.pos = save;
                }
            }
            let k = self.index(bound)?;
            if neg {
                coef.0 = -coef.0;
            }
            out.push((coef, k));
        }
        if first {
            return self.error("expected a bracket value");
        }
        Ok(out)
    }

    fn matrix(&mut self, rows: usize, field: Field) -> PResult<Matrix> {
        self.expect('[')?;
        let mut data: Vec<Vector> = Vec::new();
        loop {
            let col = self.column();
            self.expect('[')?;
            let mut row = Vec::new();
            loop {
                let ecol = {
                    self.skip_ws();
                    self.column()
                };
                let (n, d) = self.signed_ratio()?;
                row.push(to_scalar(field, &n, &d).ok_or(FormatError::Syntax {
                    line: self.line,
                    column: ecol,
                    message: format!("denominator vanishes in {field}"),
                })?);
                if !self.eat(',') {
                    break;
                }
            }
            self.expect(']')?;
            if row.len() != rows {
                return Err(FormatError::Syntax {
                    line: self.line,
                    column: col,
                    message: format!("row has {} entries, expected {rows}", row.len()),
                });
            }
            data.push(row);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        if data.len() != rows {
            return self.error(format!("matrix has {} rows, expected {rows}", data.len()));
        }
        Ok(Matrix::from_rows(field, rows, data).expect("rows checked"))
    }
}

fn to_scalar(field: Field, n: &BigInt, d: &BigInt) -> Option<Scalar> {
    field.ratio(n, d)
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

enum Header {
    Algebra { field: Field, dim: usize },
    Ring { factors: Vec<u64> },
}

fn parse_header(c: &mut Cursor) -> PResult<(String, Header)> {
    let col = {
        c.skip_ws();
        c.column()
    };
    match c.word()? {
        "algebra" => {
            let name = c.word()?.to_string();
            c.keyword("over")?;
            let fcol = {
                c.skip_ws();
                c.column()
            };
            let f = c.word()?;
            let field = if f == "Q" {
                Field::Rational
            } else if let Some(p) = f.strip_prefix("Fp:") {
                let p: u64 = p.parse().map_err(|_| FormatError::Syntax {
                    line: c.line,
                    column: fcol,
                    message: format!("bad prime '{p}'"),
                })?;
                Field::prime(p).map_err(|e| FormatError::Semantic { line: c.line, source: e })?
            } else {
                return Err(FormatError::Syntax {
                    line: c.line,
                    column: fcol,
                    message: format!("expected Q or Fp:P, found '{f}'"),
                });
            };
            c.keyword("dim")?;
            let dim = c.usize()?;
            Ok((name, Header::Algebra { field, dim }))
        }
        "ring" => {
            let name = c.word()?.to_string();
            c.keyword("factors")?;
            let mut factors = Vec::new();
            loop {
                let fcol = {
                    c.skip_ws();
                    c.column()
                };
                let m = c.digits()?;
                let m = u64::try_from(m).ok().filter(|&m| m >= 2).ok_or(FormatError::Syntax {
                    line: c.line,
                    column: fcol,
                    message: "invariant factors must be integers at least 2".into(),
                })?;
                factors.push(m);
                if !c.eat(',') {
                    break;
                }
            }
            Ok((name, Header::Ring { factors }))
        }
        w => Err(FormatError::Syntax {
            line: c.line,
            column: col,
            message: format!("expected 'algebra' or 'ring', found '{w}'"),
        }),
    }
}

/// Stores `[i,j] = value`, checking duplicates and antisymmetry against `[j,i]`.
fn store<V: Clone + PartialEq>(
    map: &mut BTreeMap<(usize, usize), (V, usize)>,
    line: usize,
    (i, j): (usize, usize),
    value: V,
    neg: impl Fn(&V) -> V,
) -> PResult<()> {
    if let Some((_, prev)) = map.get(&(i, j)) {
        return Err(FormatError::Conflict {
            line,
            message: format!("[{},{}] already given on line {prev}", i + 1, j + 1),
        });
    }
    if let Some((other, prev)) = map.get(&(j, i)) {
        if neg(other) != value {
            return Err(FormatError::Conflict {
                line,
                message: format!(
                    "[{},{}] contradicts [{},{}] on line {prev} (antisymmetry)",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                ),
            });
        }
    }
    map.insert((i, j), (value, line));
    Ok(())
}

pub fn parse(text: &str) -> PResult<DefinitionFile> {
    let mut header: Option<(String, Header, usize)> = None;
    let mut alg_raw: BTreeMap<(usize, usize), (Vector, usize)> = BTreeMap::new();
    let mut ring_raw: BTreeMap<(usize, usize), (Vec<u64>, usize)> = BTreeMap::new();
    let mut reps: Vec<(RepBlock, BTreeMap<usize, usize>)> = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let mut c = Cursor::new(line, body);
        let Some((_, h, _)) = &header else {
            let (name, h) = parse_header(&mut c)?;
            if !c.at_end() {
                return c.error("unexpected text after header");
            }
            header = Some((name, h, line));
            continue;
        };
        match c.peek() {
            Some('[') => {
                match h {
                    Header::Algebra { field, dim } => {
                        let (i, j) = c.pair(*dim)?;
                        c.expect('=')?;
                        let terms = c.terms(*dim)?;
                        let mut v = field.zero_vector(*dim);
                        for ((num, den), k) in terms {
                            let s = to_scalar(*field, &num, &den).ok_or(FormatError::Semantic {
                                line,
                                source: Error::Precondition(format!("denominator {den} vanishes in {field}")),
                            })?;
                            v[k] = &v[k] + &s;
                        }
                        if i == j && v.iter().any(|s| !s.is_zero()) {
                            return Err(FormatError::Semantic {
                                line,
                                source: Error::NotAlternating(i),
                            });
                        }
                        store(&mut alg_raw, line, (i, j), v, |x| crate::exactlin::vector::neg(x))?;
                    }
                    Header::Ring { factors } => {
                        let r = factors.len();
                        let (i, j) = c.pair(r)?;
                        c.expect('=')?;
                        let terms = c.terms(r)?;
                        let mut v = vec![0u64; r];
                        for ((num, den), k) in terms {
                            if !den.is_one() {
                                return Err(FormatError::Semantic {
                                    line,
                                    source: Error::InvalidRing("ring coefficients must be integers".into()),
                                });
                            }
                            let m = BigInt::from(factors[k]);
                            let c = u64::try_from(((num % &m) + &m) % &m).expect("reduced");
                            v[k] = (v[k] + c) % factors[k];
                        }
                        if i == j && v.iter().any(|&x| x != 0) {
                            return Err(FormatError::Semantic {
                                line,
                                source: Error::NotAlternating(i),
                            });
                        }
                        let fs = factors.clone();
                        store(&mut ring_raw, line, (i, j), v, move |x| {
                            x.iter().zip(&fs).map(|(a, m)| (m - a) % m).collect()
                        })?;
                    }
                }
                if !c.at_end() {
                    return c.error("unexpected text after bracket");
                }
            }
            _ => {
                let col = c.column();
                let w = c.word()?;
                match (w, h) {
                    ("rep", Header::Algebra { .. }) => {
                        let name = c.word()?.to_string();
                        c.keyword("on")?;
                        c.keyword("dim")?;
                        let dim = c.usize()?;
                        if !c.at_end() {
                            return c.error("unexpected text after rep header");
                        }
                        if reps.iter().any(|(r, _)| r.name == name) {
                            return Err(FormatError::Conflict {
                                line,
                                message: format!("representation '{name}' defined twice"),
                            });
                        }
                        reps.push((
                            RepBlock {
                                name,
                                dim,
                                phi: BTreeMap::new(),
                            },
                            BTreeMap::new(),
                        ));
                    }
                    ("phi", Header::Algebra { field, dim }) => {
                        let Some((rep, lines)) = reps.last_mut() else {
                            return Err(FormatError::Syntax {
                                line,
                                column: col,
                                message: "'phi' outside a rep block".into(),
                            });
                        };
                        let i = c.index(*dim)?;
                        c.expect('=')?;
                        let m = c.matrix(rep.dim, *field)?;
                        if !c.at_end() {
                            return c.error("unexpected text after matrix");
                        }
                        if let Some(prev) = lines.get(&i) {
                            return Err(FormatError::Conflict {
                                line,
                                message: format!("phi {} already given on line {prev}", i + 1),
                            });
                        }
                        lines.insert(i, line);
                        rep.phi.insert(i, m);
                    }
                    ("rep" | "phi", Header::Ring { .. }) => {
                        return Err(FormatError::Syntax {
                            line,
                            column: col,
                            message: "representations are only allowed for algebras".into(),
                        })
                    }
                    _ => {
                        return Err(FormatError::Syntax {
                            line,
                            column: col,
                            message: format!("unexpected '{w}'"),
                        })
                    }
                }
            }
        }
    }

    let Some((name, h, _)) = header else {
        return Err(FormatError::Syntax {
            line: text.lines().count().max(1),
            column: 1,
            message: "missing 'algebra' or 'ring' header".into(),
        });
    };
    let body = match h {
        Header::Algebra { field, dim } => {
            let mut brackets = BTreeMap::new();
            for ((i, j), (v, _)) in alg_raw {
                if i == j || v.iter().all(Scalar::is_zero) {
                    continue;
                }
                let (key, v) = if i < j { ((i, j), v) } else { ((j, i), crate::exactlin::vector::neg(&v)) };
                brackets.insert(key, v);
            }
            Body::Algebra {
                field,
                dim,
                brackets,
                reps: reps.into_iter().map(|(r, _)| r).collect(),
            }
        }
        Header::Ring { factors } => {
            let mut brackets = BTreeMap::new();
            for ((i, j), (v, _)) in ring_raw {
                if i == j || v.iter().all(|&x| x == 0) {
                    continue;
                }
                let (key, v) = if i < j {
                    ((i, j), v)
                } else {
                    ((j, i), v.iter().zip(&factors).map(|(a, m)| (m - a) % m).collect())
                };
                brackets.insert(key, v);
            }
            Body::Ring { factors, brackets }
        }
    };
    Ok(DefinitionFile { name, body })
}

fn write_terms<'a>(out: &mut String, prefix: &str, terms: impl Iterator<Item = (String, bool, usize)> + 'a) {
    let mut first = true;
    for (coef, negative, k) in terms {
        let sign = match (first, negative) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        };
        let coef = if coef == "1" { String::new() } else { format!("{coef}*") };
        let _ = write!(out, "{sign}{coef}{prefix}{}", k + 1);
        first = false;
    }
    if first {
        out.push('0');
    }
}

impl DefinitionFile {
    /// Canonical text; reparses to an equal definition.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.body {
            Body::Algebra {
                field,
                dim,
                brackets,
                reps,
            } => {
                let _ = writeln!(out, "algebra {} over {field} dim {dim}", self.name);
                for ((i, j), v) in brackets {
                    let _ = write!(out, "[{},{}] = ", i + 1, j + 1);
                    let terms = v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(k, s)| {
                        let text = s.to_string();
                        match text.strip_prefix('-') {
                            Some(t) => (t.to_string(), true, k),
                            None => (text, false, k),
                        }
                    });
                    write_terms(&mut out, "", terms);
                    out.push('\n');
                }
                for rep in reps {
                    let _ = writeln!(out, "rep {} on dim {}", rep.name, rep.dim);
                    for (i, m) in &rep.phi {
                        let _ = writeln!(out, "phi {} = {m}", i + 1);
                    }
                }
            }
            Body::Ring { factors, brackets } => {
                let fs: Vec<String> = factors.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "ring {} factors {}", self.name, fs.join(","));
                for ((i, j), v) in brackets {
                    let _ = write!(out, "[{},{}] = ", i + 1, j + 1);
                    let terms = v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, c)| (c.to_string(), false, k));
                    write_terms(&mut out, "", terms);
                    out.push('\n');
                }
            }
        }
        out
    }

    /// Validates the whole structure (Jacobi, representation homomorphism).
    pub fn build(&self) -> PResult<Definition> {
        match &self.body {
            Body::Algebra {
                field,
                dim,
                brackets,
                reps,
            } => {
                let mut c = vec![vec![field.zero_vector(*dim); *dim]; *dim];
                for ((i, j), v) in brackets {
                    c[*j][*i] = crate::exactlin::vector::neg(v);
                    c[*i][*j] = v.clone();
                }
                let algebra = LieAlgebra::new(self.name.clone(), *field, c).map_err(FormatError::Invalid)?;
                let mut built = Vec::new();
                for rep in reps {
                    let phi = (0..*dim)
                        .map(|i| {
                            rep.phi
                                .get(&i)
                                .cloned()
                                .unwrap_or_else(|| Matrix::zeros(*field, rep.dim, rep.dim))
                        })
                        .collect();
                    let r = Representation::new(algebra.clone(), rep.dim, phi).map_err(|e| match e {
                        Error::InvalidRepresentation(m) => {
                            FormatError::Invalid(Error::InvalidRepresentation(format!("{}: {m}", rep.name)))
                        }
                        e => FormatError::Invalid(e),
                    })?;
                    built.push((rep.name.clone(), r));
                }
                Ok(Definition::Algebra { algebra, reps: built })
            }
            Body::Ring { factors, brackets } => {
                let r = factors.len();
                let mut table = vec![vec![vec![0u64; r]; r]; r];
                for ((i, j), v) in brackets {
                    table[*j][*i] = v.iter().zip(factors).map(|(a, m)| (m - a) % m).collect();
                    table[*i][*j] = v.clone();
                }
                FiniteLieRing::new(self.name.clone(), factors.clone(), table)
                    .map(Definition::Ring)
                    .map_err(FormatError::Invalid)
            }
        }
    }
}

/// Text form of an algebra (without representations).
pub fn algebra_to_text(l: &LieAlgebra) -> String {
    let mut brackets = BTreeMap::new();
    for i in 0..l.dim() {
        for j in i + 1..l.dim() {
            if l.c(i, j).iter().any(|s| !s.is_zero()) {
                brackets.insert((i, j), l.c(i, j).to_vec());
            }
        }
    }
    DefinitionFile {
        name: l.name().to_string(),
        body: Body::Algebra {
            field: l.field(),
            dim: l.dim(),
            brackets,
            reps: Vec::new(),
        },
    }
    .to_text()
}

pub fn ring_to_text(r: &FiniteLieRing) -> String {
    let mut brackets = BTreeMap::new();
    for i in 0..r.rank() {
        for j in i + 1..r.rank() {
            if r.table()[i][j].iter().any(|&c| c != 0) {
                brackets.insert((i, j), r.table()[i][j].clone());
            }
        }
    }
    DefinitionFile {
        name: r.name().to_string(),
        body: Body::Ring {
            factors: r.factors().to_vec(),
            brackets,
        },
    }
    .to_text()
}
