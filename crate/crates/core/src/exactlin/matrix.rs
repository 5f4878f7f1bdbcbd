use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::scalar::{bigint_content, denominator_lcm, Field, Scalar};
use super::subspace::Subspace;
use super::vector::{self, Vector};
use crate::error::{Error, Result};

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries in `field`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vector>) -> Result<Matrix> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch {
                        left: field,
                        right: s.field(),
                    });
                }
                data.push(s);
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vector]) -> Result<Matrix> {
        Ok(Matrix::from_rows(field, rows, cols.to_vec())?.transpose())
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.int(x)).collect())
            .collect();
        Matrix::from_rows(field, cols, rows).expect("rectangular integer matrix")
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Reshapes a row-major vector of length `rows * cols`.
    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vector) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| vector::dot(self.field, self.row(r), v))
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Commutator `self·other − other·self`.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, k: usize) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Vertical concatenation.
    pub fn stack(field: Field, cols: usize, blocks: &[Matrix]) -> Result<Matrix> {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.field != field {
                return Err(Error::FieldMismatch {
                    left: field,
                    right: b.field,
                });
            }
            if b.cols != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: b.cols,
                });
            }
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Reduced row echelon form and pivot columns; zero rows are dropped.
    ///
    /// Over ℚ the elimination runs fraction-free on integer rows (denominators
    /// cleared, rows divided by their content after every update) and only the
    /// final normalisation divides by the pivots.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (rows, pivots) = match self.field {
            Field::Rational => rref_rational(self),
            Field::Prime(_) => rref_generic(self),
        };
        let m = Matrix::from_rows(self.field, self.cols, rows).expect("rref keeps shape");
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space `{v : self·v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = self.field.zero_vector(n);
            v[free] = self.field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free);
            }
            basis.push(v);
        }
        Subspace::span(self.field, n, &basis).expect("kernel vectors have ambient length")
    }
}

fn rref_generic(m: &Matrix) -> (Vec<Vector>, Vec<usize>) {
    let mut rows: Vec<Vector> = m.row_vectors().map(|r| r.to_vec()).collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..m.cols {
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][c].inv().expect("nonzero pivot");
        rows[next] = vector::scale(&rows[next], &inv);
        for r in 0..rows.len() {
            if r != next && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                rows[r] = vector::sub_scaled(&rows[r], &rows[next], &f);
            }
        }
        pivots.push(c);
        next += 1;
    }
    rows.truncate(next);
    (rows, pivots)
}

fn rref_rational(m: &Matrix) -> (Vec<Vector>, Vec<usize>) {
    let mut rows: Vec<Vec<BigInt>> = m
        .row_vectors()
        .map(|r| {
            let l = denominator_lcm(r);
            r.iter()
                .map(|s| {
                    let q = s.as_rational().expect("rational entries");
                    (q * BigRational::from_integer(l.clone())).to_integer()
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..m.cols {
        // smallest nonzero pivot keeps the integer entries short
        let Some(p) = (next..rows.len())
            .filter(|&r| !rows[r][c].is_zero())
            .min_by_key(|&r| rows[r][c].abs())
        else {
            continue;
        };
        rows.swap(next, p);
        let (head, tail) = rows.split_at_mut(next);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row exists");
        let a = pivot_row[c].clone();
        for row in head.iter_mut().chain(rest.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let b = row[c].clone();
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                *x = &a * &*x - &b * y;
            }
            normalize_content(row);
        }
        pivots.push(c);
        next += 1;
    }
    rows.truncate(next);
    let out = rows
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.into_iter()
                .map(|x| Scalar::Rational(BigRational::new(x, lead.clone())))
                .collect()
        })
        .collect();
    (out, pivots)
}

fn normalize_content(row: &mut [BigInt]) {
    let g = bigint_content(row);
    if !g.is_zero() && g != BigInt::from(1) {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for r in self.row_vectors() {
            seq.serialize_element(r)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(Field::Rational, rows)
    }

    #[test]
    fn rref_rank_one() {
        let (r, p) = q(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r, q(&[&[1, 2]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_identity() {
        let id = Matrix::identity(Field::Rational, 3);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn rref_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let (r, p) = Matrix::from_ints(f2, &[&[1, 1], &[1, 0]]).rref();
        assert_eq!(r, Matrix::identity(f2, 2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_with_fractions() {
        // [[1/2, 1/3], [1/4, 1/6]] has rank one with row (1, 2/3)
        let f = Field::Rational;
        let h = |a: i64, b: i64| f.ratio(&a.into(), &b.into()).unwrap();
        let m = Matrix::from_rows(f, 2, vec![vec![h(1, 2), h(1, 3)], vec![h(1, 4), h(1, 6)]]).unwrap();
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_rows(f, 2, vec![vec![f.one(), h(2, 3)]]).unwrap());
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        let f = Field::Rational;
        assert_eq!(Matrix::zeros(f, 2, 2).kernel(), Subspace::full(f, 2));
        assert_eq!(Matrix::identity(f, 3).kernel(), Subspace::zero(f, 3));
        let k = q(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]).kernel();
        let expected = Subspace::span(f, 3, &[f.unit_vector(3, 0), f.unit_vector(3, 2)]).unwrap();
        assert_eq!(k, expected);
    }

    #[test]
    fn mixed_field_product_is_an_error() {
        let a = Matrix::identity(Field::Rational, 2);
        let b = Matrix::identity(Field::prime(3).unwrap(), 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn trace_and_pow() {
        let m = q(&[&[0, 1], &[0, 0]]);
        assert!(m.pow(2).unwrap().is_zero());
        assert_eq!(q(&[&[1, 2], &[3, 4]]).trace(), Field::Rational.int(5));
    }
}
