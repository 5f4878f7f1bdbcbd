use serde::{Serialize, Serializer};

use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use super::vector::{self, Vector};
use crate::error::{Error, Result};

/// A linear subspace of `K^n` stored by its canonical RREF basis.
///
/// Two equal subspaces have identical representations, so `==` is subspace
/// equality and fixed-point loops can compare terms syntactically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Subspace {
        let (basis, pivots) = m.rref();
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vector]) -> Result<Subspace> {
        Ok(Subspace::row_space(&Matrix::from_rows(
            field,
            ambient,
            vectors.to_vec(),
        )?))
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        self.basis.row_vectors()
    }

    /// Standard coordinates that are not pivots; they index a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        if let Some(s) = v.iter().find(|s| s.field() != self.field()) {
            return Err(Error::FieldMismatch {
                left: self.field(),
                right: s.field(),
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                left: self.field(),
                right: other.field(),
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    /// Residual of `v` after clearing every pivot coordinate; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vector> {
        self.check_vector(v)?;
        Ok(self.reduce_unchecked(v))
    }

    pub(crate) fn reduce_unchecked(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.row_vectors().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = r[p].clone();
                r = vector::sub_scaled(&r, row, &f);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(vector::is_zero(&self.reduce(v)?))
    }

    /// Coordinates of `v` in the RREF basis, `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vector>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self
            .basis_vectors()
            .all(|v| vector::is_zero(&other.reduce_unchecked(v))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let stacked = Matrix::stack(self.field(), self.ambient, &[self.basis.clone(), other.basis.clone()])?;
        Ok(Subspace::row_space(&stacked))
    }

    /// Intersection by the Zassenhaus construction: reduce the block matrix
    /// `[[A, A], [B, 0]]`; rows whose left half vanishes span `A ∩ B` in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let f = self.field();
        let n = self.ambient;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for v in self.basis_vectors() {
            let mut row = v.to_vec();
            row.extend_from_slice(v);
            rows.push(row);
        }
        for v in other.basis_vectors() {
            let mut row = v.to_vec();
            row.extend(std::iter::repeat_n(f.zero(), n));
            rows.push(row);
        }
        let (r, pivots) = Matrix::from_rows(f, 2 * n, rows)?.rref();
        let meet: Vec<Vector> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= n)
            .map(|(i, _)| r.row(i)[n..].to_vec())
            .collect();
        Subspace::span(f, n, &meet)
    }

    /// Image under a linear map `map` (acting on column vectors).
    pub fn image(&self, map: &Matrix) -> Result<Subspace> {
        if map.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: map.cols(),
            });
        }
        let imgs = self
            .basis_vectors()
            .map(|v| map.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(self.field(), map.rows(), &imgs)
    }

    /// Matrix of `v ↦ reduce(v)`, the projection along this subspace onto the
    /// span of its non-pivot coordinates.
    pub fn reduction_matrix(&self) -> Matrix {
        let f = self.field();
        let cols: Vec<Vector> = (0..self.ambient)
            .map(|j| self.reduce_unchecked(&f.unit_vector(self.ambient, j)))
            .collect();
        Matrix::from_columns(f, self.ambient, &cols).expect("square reduction matrix")
    }

    /// Elements of the span over a prime field, in lexicographic order of coefficient tuples.
    pub fn enumerate_prime_field(&self) -> Option<Vec<Vector>> {
        let Field::Prime(p) = self.field() else {
            return None;
        };
        let d = self.dim();
        let total = (p as u128).checked_pow(d as u32)?;
        if total > 1 << 20 {
            return None;
        }
        let f = self.field();
        let mut out = Vec::with_capacity(total as usize);
        let mut coeffs = vec![0u64; d];
        loop {
            let mut v = f.zero_vector(self.ambient);
            for (c, row) in coeffs.iter().zip(self.basis_vectors()) {
                if *c != 0 {
                    v = vector::add(&v, &vector::scale(row, &f.int(*c as i64)));
                }
            }
            out.push(v);
            let mut i = d;
            loop {
                if i == 0 {
                    return Some(out);
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}

/// Incrementally maintained RREF basis, used by closure loops that add
/// vectors one at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Field, ambient: usize) -> Echelon {
        Echelon {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_subspace(s: &Subspace) -> Echelon {
        Echelon {
            field: s.field(),
            ambient: s.ambient,
            rows: s.basis_vectors().map(|r| r.to_vec()).collect(),
            pivots: s.pivots.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = r[p].clone();
                r = vector::sub_scaled(&r, row, &f);
            }
        }
        r
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|s| !s.is_zero()) else {
            return Ok(false);
        };
        if r[p].field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: r[p].field(),
            });
        }
        let inv = r[p].inv().expect("nonzero leading entry");
        let r = vector::scale(&r, &inv);
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let f = row[p].clone();
                *row = vector::sub_scaled(row, &r, &f);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        Ok(true)
    }

    pub fn into_subspace(self) -> Subspace {
        let basis = Matrix::from_rows(self.field, self.ambient, self.rows)
            .expect("echelon rows have ambient length");
        Subspace {
            ambient: self.ambient,
            basis,
            pivots: self.pivots,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q().int(x)).collect()
    }

    fn span(vs: &[&[i64]]) -> Subspace {
        let n = vs.first().map_or(0, |r| r.len());
        Subspace::span(q(), n, &vs.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn sum_examples() {
        let a = span(&[&[1, 1, 0]]);
        assert_eq!(a.sum(&Subspace::zero(q(), 3)).unwrap(), a);
        assert_eq!(
            span(&[&[1, 0]]).sum(&span(&[&[0, 1]])).unwrap(),
            Subspace::full(q(), 2)
        );
        assert_eq!(
            span(&[&[1, 1]]).sum(&span(&[&[1, -1]])).unwrap(),
            Subspace::full(q(), 2)
        );
    }

    #[test]
    fn intersect_examples() {
        let a = span(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = span(&[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.intersect(&b).unwrap(), span(&[&[0, 1, 0]]));
        assert!(a.intersect(&Subspace::zero(q(), 3)).unwrap().is_zero());
    }

    #[test]
    fn contains_examples() {
        let s = span(&[&[0, 1]]);
        assert!(s.contains(&v(&[0, 0])).unwrap());
        assert!(!s.contains(&v(&[1, 0])).unwrap());
        assert!(span(&[&[1, 1], &[0, 1]]).contains(&v(&[1, 2])).unwrap());
        assert!(matches!(
            s.contains(&v(&[1, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ambient_mismatch() {
        let a = Subspace::full(q(), 2);
        let b = Subspace::full(q(), 3);
        assert!(matches!(a.sum(&b), Err(Error::AmbientMismatch { left: 2, right: 3 })));
        assert!(matches!(a.intersect(&b), Err(Error::AmbientMismatch { .. })));
        let c = Subspace::full(Field::prime(3).unwrap(), 2);
        assert!(matches!(a.sum(&c), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn echelon_matches_batch_rref() {
        let vs = [v(&[2, 4, 1]), v(&[1, 2, 0]), v(&[3, 6, 1])];
        let mut e = Echelon::new(q(), 3);
        for x in &vs {
            e.insert(x).unwrap();
        }
        assert_eq!(e.into_subspace(), Subspace::span(q(), 3, &vs).unwrap());
    }

    #[test]
    fn enumerate_over_prime_field() {
        let f = Field::prime(3).unwrap();
        let s = Subspace::span(f, 2, &[vec![f.one(), f.one()]]).unwrap();
        let all = s.enumerate_prime_field().unwrap();
        assert_eq!(all.len(), 3);
        assert!(all.contains(&vec![f.int(2), f.int(2)]));
    }
}
