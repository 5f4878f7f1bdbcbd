//! Lie algebras given by structure constants.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{vector, Echelon, Field, Matrix, Scalar, Subspace, Vector};

/// A finite-dimensional Lie algebra `L = K^n` with bracket `[e_i, e_j] = c[i][j]`.
///
/// Construction validates the alternating law, antisymmetry and the Jacobi
/// identity, so every value of this type is a genuine Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    field: Field,
    dim: usize,
    constants: Vec<Vector>,
    ad_basis: Vec<Matrix>,
}

/// Coordinates of an element of a Lie algebra in its standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Element(pub Vector);

impl Element {
    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.0)
    }

    pub fn neg(&self) -> Element {
        Element(vector::neg(&self.0))
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element(vector::scale(&self.0, s))
    }

    pub fn add(&self, other: &Element) -> Element {
        Element(vector::add(&self.0, &other.0))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "e{}", i + 1)?;
            } else {
                write!(f, "({c})e{}", i + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// What closure properties a subspace has been verified to enjoy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SubKind {
    Subspace,
    Subalgebra,
    Ideal,
}

/// A subspace of a Lie algebra tagged with its verified kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SubStructure {
    pub space: Subspace,
    pub kind: SubKind,
}

impl SubStructure {
    pub fn is_ideal(&self) -> bool {
        self.kind == SubKind::Ideal
    }

    pub fn is_subalgebra(&self) -> bool {
        self.kind >= SubKind::Subalgebra
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

impl LieAlgebra {
    /// Validates `constants[i][j] = [e_i, e_j]` and builds the algebra.
    ///
    /// Violations are reported in a fixed order: alternating law on each `i`,
    /// antisymmetry on pairs `i < j`, then Jacobi on triples `i < j < k`.
    pub fn new(name: impl Into<String>, field: Field, constants: Vec<Vec<Vector>>) -> Result<LieAlgebra> {
        let dim = constants.len();
        let mut flat = Vec::with_capacity(dim * dim);
        for row in constants {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: v.len(),
                    });
                }
                if let Some(s) = v.iter().find(|s| s.field() != field) {
                    return Err(Error::FieldMismatch {
                        left: field,
                        right: s.field(),
                    });
                }
                flat.push(v);
            }
        }
        let mut l = LieAlgebra {
            name: name.into(),
            field,
            dim,
            constants: flat,
            ad_basis: Vec::new(),
        };
        l.validate()?;
        l.ad_basis = (0..dim).map(|i| l.ad_of_coords(&field.unit_vector(dim, i))).collect();
        Ok(l)
    }

    pub fn abelian(field: Field, dim: usize) -> LieAlgebra {
        let zero = vec![vec![field.zero_vector(dim); dim]; dim];
        LieAlgebra::new(format!("abelian-{dim}"), field, zero).expect("abelian algebra is valid")
    }

    /// Builds an algebra from sparse brackets `[e_i, e_j] = Σ c·e_k` on pairs `i < j`
    /// (0-based), filling the rest by antisymmetry.
    pub fn from_brackets(
        name: impl Into<String>,
        field: Field,
        dim: usize,
        brackets: &[(usize, usize, Vec<(i64, usize)>)],
    ) -> Result<LieAlgebra> {
        let mut c = vec![vec![field.zero_vector(dim); dim]; dim];
        for (i, j, terms) in brackets {
            let mut v = field.zero_vector(dim);
            for &(coef, k) in terms {
                v[k] = &v[k] + &field.int(coef);
            }
            c[*j][*i] = vector::neg(&v);
            c[*i][*j] = v;
        }
        LieAlgebra::new(name, field, c)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            if !vector::is_zero(self.c(i, i)) {
                return Err(Error::NotAlternating(i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if !vector::is_zero(&vector::add(self.c(i, j), self.c(j, i))) {
                    return Err(Error::NotAntisymmetric(i, j));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let e = |a: usize| self.field.unit_vector(n, a);
                    let (x, y, z) = (e(i), e(j), e(k));
                    let t1 = self.bracket_coords(&x, &self.bracket_coords(&y, &z));
                    let t2 = self.bracket_coords(&z, &self.bracket_coords(&x, &y));
                    let t3 = self.bracket_coords(&y, &self.bracket_coords(&z, &x));
                    if !vector::is_zero(&vector::add(&vector::add(&t1, &t2), &t3)) {
                        return Err(Error::JacobiFails(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> LieAlgebra {
        self.name = name.into();
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[e_i, e_j]`
    pub fn c(&self, i: usize, j: usize) -> &[Scalar] {
        &self.constants[i * self.dim + j]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element(self.field.unit_vector(self.dim, i))
    }

    pub fn zero_element(&self) -> Element {
        Element(self.field.zero_vector(self.dim))
    }

    pub fn element_from_ints(&self, coords: &[i64]) -> Result<Element> {
        self.element(coords.iter().map(|&x| self.field.int(x)).collect())
    }

    pub fn element(&self, coords: Vector) -> Result<Element> {
        self.check_coords(&coords)?;
        Ok(Element(coords))
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero_subspace(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }

    pub fn span(&self, elements: &[Element]) -> Result<Subspace> {
        let vs: Vec<Vector> = elements.iter().map(|e| e.0.clone()).collect();
        Subspace::span(self.field, self.dim, &vs)
    }

    fn check_coords(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        if let Some(s) = v.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: s.field(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: s.field(),
            });
        }
        if s.ambient_dim() != self.dim {
            return Err(Error::AmbientMismatch {
                left: self.dim,
                right: s.ambient_dim(),
            });
        }
        Ok(())
    }

    pub(crate) fn bracket_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim;
        let mut out = self.field.zero_vector(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = self.c(i, j);
                if vector::is_zero(c) {
                    continue;
                }
                let s = xi * yj;
                for (o, ck) in out.iter_mut().zip(c) {
                    if !ck.is_zero() {
                        *o = &*o + &(&s * ck);
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_coords(&x.0)?;
        self.check_coords(&y.0)?;
        Ok(Element(self.bracket_coords(&x.0, &y.0)))
    }

    fn ad_of_coords(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.bracket_coords(x, &self.field.unit_vector(self.dim, j)))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("square ad matrix")
    }

    /// Matrix of `ad_x = [x, ·]`; column `j` holds `[x, e_j]`.
    pub fn ad(&self, x: &Element) -> Result<Matrix> {
        self.check_coords(&x.0)?;
        let mut acc = Matrix::zeros(self.field, self.dim, self.dim);
        for (xi, m) in x.0.iter().zip(&self.ad_basis) {
            if !xi.is_zero() {
                acc = acc.add(&m.scale(xi))?;
            }
        }
        Ok(acc)
    }

    pub fn ad_basis(&self) -> &[Matrix] {
        &self.ad_basis
    }

    pub(crate) fn ad_of_vector(&self, x: &[Scalar]) -> Matrix {
        let mut acc = Matrix::zeros(self.field, self.dim, self.dim);
        for (xi, m) in x.iter().zip(&self.ad_basis) {
            if !xi.is_zero() {
                acc = acc.add(&m.scale(xi)).expect("same shape");
            }
        }
        acc
    }

    /// `[A, B]`: span of brackets of basis pairs. Bilinearity makes basis
    /// pairs enough: every `[Σ a_i u_i, Σ b_j v_j]` is a combination of `[u_i, v_j]`.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check_subspace(a)?;
        self.check_subspace(b)?;
        let mut e = Echelon::new(self.field, self.dim);
        for u in a.basis_vectors() {
            for v in b.basis_vectors() {
                e.insert(&self.bracket_coords(u, v))?;
            }
        }
        Ok(e.into_subspace())
    }

    /// `{x : [x, A] ⊆ T}`, the kernel of `x ↦ ([x, a] mod T)` over a basis of `A`.
    pub fn bracket_preimage(&self, a: &Subspace, t: &Subspace) -> Result<Subspace> {
        self.check_subspace(a)?;
        self.check_subspace(t)?;
        if a.is_zero() {
            return Ok(self.full());
        }
        let reduce = t.reduction_matrix();
        // [x, a] = -ad_a(x); the sign does not change the kernel
        let blocks = a
            .basis_vectors()
            .map(|v| reduce.mul(&self.ad_of_vector(v)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::stack(self.field, self.dim, &blocks)?.kernel())
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        self.bracket_subspaces(s, s)?.is_subspace_of(s)
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        self.bracket_subspaces(&self.full(), s)?.is_subspace_of(s)
    }

    /// `I` is an ideal of the subalgebra `A`: `I ⊆ A` and `[A, I] ⊆ I`.
    pub fn is_ideal_of(&self, i: &Subspace, a: &Subspace) -> Result<bool> {
        Ok(i.is_subspace_of(a)? && self.bracket_subspaces(a, i)?.is_subspace_of(i)?)
    }

    /// Tags a subspace with the strongest kind it satisfies.
    pub fn classify(&self, s: Subspace) -> Result<SubStructure> {
        let kind = if self.is_ideal(&s)? {
            SubKind::Ideal
        } else if self.is_subalgebra(&s)? {
            SubKind::Subalgebra
        } else {
            SubKind::Subspace
        };
        Ok(SubStructure { space: s, kind })
    }

    /// Least subalgebra containing `s`: iterate `s ← s + [s, s]`.
    pub fn subalgebra_closure(&self, s: &Subspace) -> Result<SubStructure> {
        let mut cur = s.clone();
        for _ in 0..=self.dim {
            let next = cur.sum(&self.bracket_subspaces(&cur, &cur)?)?;
            if next == cur {
                return self.classify(cur);
            }
            cur = next;
        }
        Err(Error::Internal("subalgebra closure did not stabilise".into()))
    }

    /// Least ideal containing `s`: iterate `s ← s + [L, s]`.
    pub fn ideal_closure(&self, s: &Subspace) -> Result<SubStructure> {
        self.ideal_closure_within(&self.full(), s).map(|space| SubStructure {
            space,
            kind: SubKind::Ideal,
        })
    }

    /// Least subspace containing `s` and stable under `ad_A`.
    pub(crate) fn ideal_closure_within(&self, a: &Subspace, s: &Subspace) -> Result<Subspace> {
        let mut cur = s.clone();
        for _ in 0..=self.dim {
            let next = cur.sum(&self.bracket_subspaces(a, &cur)?)?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::Internal("ideal closure did not stabilise".into()))
    }

    /// The quotient `L / I` on the non-pivot coordinates of `I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        self.check_subspace(ideal)?;
        if !self.is_ideal(ideal)? {
            return Err(Error::NotAnIdeal);
        }
        let kept = ideal.non_pivots();
        let m = kept.len();
        let project = |v: &[Scalar]| -> Vector {
            let r = ideal.reduce_unchecked(v);
            kept.iter().map(|&k| r[k].clone()).collect()
        };
        let mut c = vec![vec![self.field.zero_vector(m); m]; m];
        for (a, &ka) in kept.iter().enumerate() {
            for (b, &kb) in kept.iter().enumerate() {
                c[a][b] = project(self.c(ka, kb));
            }
        }
        let algebra = LieAlgebra::new(format!("{}/I", self.name), self.field, c)?;
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| project(&self.field.unit_vector(self.dim, j)))
            .collect();
        let projection = Matrix::from_columns(self.field, m, &cols)?;
        Ok(Quotient {
            algebra,
            projection,
            kept,
            ideal: ideal.clone(),
        })
    }

    /// `A ⊕ B` with `A` on the first coordinates.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        let (n, m) = (self.dim, other.dim);
        let d = n + m;
        let mut c = vec![vec![self.field.zero_vector(d); d]; d];
        for i in 0..n {
            for j in 0..n {
                c[i][j][..n].clone_from_slice(self.c(i, j));
            }
        }
        for i in 0..m {
            for j in 0..m {
                c[n + i][n + j][n..].clone_from_slice(other.c(i, j));
            }
        }
        LieAlgebra::new(format!("{}+{}", self.name, other.name), self.field, c)
    }
}

/// `L / I` together with the projection `L → L/I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    pub projection: Matrix,
    /// Coordinates of `L` that index the quotient basis.
    pub kept: Vec<usize>,
    pub ideal: Subspace,
}

impl Quotient {
    pub fn project(&self, x: &Element) -> Result<Element> {
        Ok(Element(self.projection.mul_vec(&x.0)?))
    }

    /// The canonical lift placing quotient coordinates on the kept positions.
    pub fn lift(&self, x: &Element) -> Vector {
        let f = self.algebra.field();
        let mut v = f.zero_vector(self.projection.cols());
        for (c, &k) in x.0.iter().zip(&self.kept) {
            v[k] = c.clone();
        }
        v
    }

    /// Full preimage in `L` of a subspace of the quotient.
    pub fn preimage(&self, s: &Subspace) -> Result<Subspace> {
        self.algebra.check_subspace(s)?;
        let lifts: Vec<Vector> = s
            .basis_vectors()
            .map(|v| self.lift(&Element(v.to_vec())))
            .collect();
        let n = self.projection.cols();
        Subspace::span(self.algebra.field(), n, &lifts)?.sum(&self.ideal)
    }
}
