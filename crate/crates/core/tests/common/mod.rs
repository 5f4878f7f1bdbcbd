//! Independent reference computations used as oracles by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use lieforge::exactlin::{Field, Matrix, Scalar};
use lieforge::LieAlgebra;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn to_q(s: &Scalar) -> BigRational {
    s.as_rational().expect("rational scalar").clone()
}

pub fn matrix_q(m: &Matrix) -> Vec<Vec<BigRational>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(to_q).collect()).collect()
}

/// Textbook Gauss-Jordan over `BigRational`, no fraction-free tricks.
pub fn naive_rref(mut a: Vec<Vec<BigRational>>) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = BigRational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &a[r][j] * &f;
                    a[i][j] = &a[i][j] - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn naive_rank(a: Vec<Vec<BigRational>>) -> usize {
    naive_rref(a).1.len()
}

/// Brute-force structure constants check of Jacobi on all basis triples.
pub fn jacobi_holds(l: &LieAlgebra) -> bool {
    let n = l.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (l.basis_element(i), l.basis_element(j), l.basis_element(k));
                let a = l.bracket(&x, &l.bracket(&y, &z).unwrap()).unwrap();
                let b = l.bracket(&y, &l.bracket(&z, &x).unwrap()).unwrap();
                let c = l.bracket(&z, &l.bracket(&x, &y).unwrap()).unwrap();
                if !a.add(&b).add(&c).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// All vectors of `𝔽_p^n` in lexicographic order.
pub fn all_vectors(p: u64, n: usize) -> Vec<Vec<Scalar>> {
    let f = Field::prime(p).unwrap();
    let total = (p as usize).pow(n as u32);
    (0..total)
        .map(|mut x| {
            let mut v = vec![f.zero(); n];
            for slot in v.iter_mut().rev() {
                *slot = f.int((x % p as usize) as i64);
                x /= p as usize;
            }
            v
        })
        .collect()
}

pub type QMat = Vec<Vec<BigRational>>;

/// `[x, y]` straight from the structure constants.
pub fn naive_bracket(l: &LieAlgebra, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
    let n = l.dim();
    let mut out = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..n {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            for (k, c) in l.c(i, j).iter().enumerate() {
                out[k] += &x[i] * &y[j] * to_q(c);
            }
        }
    }
    out
}

pub fn unit(n: usize, i: usize) -> Vec<BigRational> {
    (0..n).map(|k| if k == i { q(1) } else { q(0) }).collect()
}

/// Column `j` of `ad_x` is `[x, e_j]`.
pub fn naive_ad(l: &LieAlgebra, x: &[BigRational]) -> QMat {
    let n = l.dim();
    let cols: Vec<_> = (0..n).map(|j| naive_bracket(l, x, &unit(n, j))).collect();
    (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect()
}

pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let (n, m, p) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..n)
        .map(|i| {
            (0..p)
                .map(|j| (0..m).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &QMat, v: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(BigRational::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

pub fn identity(n: usize) -> QMat {
    (0..n).map(|i| unit(n, i)).collect()
}

pub fn is_zero_mat(a: &QMat) -> bool {
    a.iter().all(|r| r.iter().all(Zero::is_zero))
}

/// `Σ_i a^i / i!`, for nilpotent `a`.
pub fn naive_exp(a: &QMat) -> QMat {
    let n = a.len();
    let mut sum = identity(n);
    let mut term = identity(n);
    for i in 1..=n {
        term = mat_mul(&term, a);
        let inv = q(1) / q(i as i64);
        term = term.into_iter().map(|r| r.into_iter().map(|x| x * &inv).collect()).collect();
        if is_zero_mat(&term) {
            break;
        }
        for (sr, tr) in sum.iter_mut().zip(&term) {
            for (s, t) in sr.iter_mut().zip(tr) {
                *s += t;
            }
        }
    }
    sum
}

/// Gram matrix of the Killing form `tr(ad_{e_i} ad_{e_j})`.
pub fn killing_form(l: &LieAlgebra) -> QMat {
    let n = l.dim();
    let ads: Vec<QMat> = (0..n).map(|i| naive_ad(l, &unit(n, i))).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let p = mat_mul(&ads[i], &ads[j]);
                    (0..n).fold(BigRational::zero(), |acc, k| acc + &p[k][k])
                })
                .collect()
        })
        .collect()
}

/// Whether `L^k` reaches zero, with spans tracked by textbook elimination.
pub fn naive_is_nilpotent(l: &LieAlgebra) -> bool {
    let n = l.dim();
    let mut cur: QMat = identity(n);
    for _ in 0..=n {
        if cur.is_empty() {
            return true;
        }
        let mut next = Vec::new();
        for i in 0..n {
            for v in &cur {
                next.push(naive_bracket(l, &unit(n, i), v));
            }
        }
        let (rows, _) = naive_rref(next);
        if rows.len() == cur.len() {
            return false;
        }
        cur = rows;
    }
    cur.is_empty()
}

pub fn to_qvec(v: &[Scalar]) -> Vec<BigRational> {
    v.iter().map(to_q).collect()
}
