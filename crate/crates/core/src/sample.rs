//! Seeded random inputs: elements, subspaces, subalgebras, solvable algebras
//! and abelian actions.

use rand::Rng;

use crate::algebra::{Element, LieAlgebra};
use crate::constructions::{semidirect_product, Representation};
use crate::error::Result;
use crate::exactlin::{Field, Matrix, Subspace, Vector};
use crate::structure;

/// Coordinates uniform in `[-bound, bound]`.
pub fn random_element(l: &LieAlgebra, rng: &mut impl Rng, bound: i64) -> Element {
    Element(random_vector(l.field(), l.dim(), rng, bound))
}

pub fn random_vector(field: Field, n: usize, rng: &mut impl Rng, bound: i64) -> Vector {
    (0..n).map(|_| field.int(rng.gen_range(-bound..=bound))).collect()
}

/// Mostly-zero coordinates in `{-1, 0, 1}`; these hit coordinate subspaces often.
pub fn sparse_element(l: &LieAlgebra, rng: &mut impl Rng) -> Element {
    let f = l.field();
    Element(
        (0..l.dim())
            .map(|_| match rng.gen_range(0..6) {
                0 => f.int(1),
                1 => f.int(-1),
                _ => f.zero(),
            })
            .collect(),
    )
}

fn mixed_element(l: &LieAlgebra, rng: &mut impl Rng) -> Element {
    match rng.gen_range(0..3) {
        0 => l.basis_element(rng.gen_range(0..l.dim())),
        1 => sparse_element(l, rng),
        _ => random_element(l, rng, 2),
    }
}

/// Span of up to `max_gens` random elements.
pub fn random_subspace(l: &LieAlgebra, rng: &mut impl Rng, max_gens: usize) -> Subspace {
    if l.dim() == 0 {
        return l.zero_subspace();
    }
    let k = rng.gen_range(0..=max_gens);
    let gens: Vec<Element> = (0..k).map(|_| mixed_element(l, rng)).collect();
    l.span(&gens).expect("elements of l")
}

/// Subalgebra generated by one or two random elements.
pub fn random_subalgebra(l: &LieAlgebra, rng: &mut impl Rng) -> Subspace {
    if l.dim() == 0 {
        return l.zero_subspace();
    }
    let k = rng.gen_range(1..=2);
    let gens: Vec<Element> = (0..k).map(|_| mixed_element(l, rng)).collect();
    let s = l.span(&gens).expect("elements of l");
    l.subalgebra_closure(&s).expect("subspace of l").space
}

/// Subalgebra of `h` generated by one random element of `h`.
pub fn random_subalgebra_of(l: &LieAlgebra, h: &Subspace, rng: &mut impl Rng) -> Subspace {
    if h.is_zero() {
        return h.clone();
    }
    let basis: Vec<Vector> = h.basis_vectors().map(<[_]>::to_vec).collect();
    let f = l.field();
    let mut x = f.zero_vector(l.dim());
    let sparse = rng.gen_bool(0.5);
    for b in &basis {
        let c = if sparse { rng.gen_range(0..=1) } else { rng.gen_range(-2..=2) };
        x = crate::exactlin::vector::add(&x, &crate::exactlin::vector::scale(b, &f.int(c)));
    }
    let s = l.span(&[Element(x)]).expect("element of l");
    l.subalgebra_closure(&s).expect("subspace of l").space
}

/// `Σ c_i A^i` with small integer coefficients; such matrices commute with each other.
fn polynomial_in(a: &Matrix, rng: &mut impl Rng, constant: bool) -> Matrix {
    let f = a.field();
    let n = a.rows();
    let mut acc = Matrix::zeros(f, n, n);
    let mut power = Matrix::identity(f, n);
    for i in 0..=2 {
        let c = if i == 0 && !constant { 0 } else { rng.gen_range(-2..=2) };
        if c != 0 {
            acc = acc.add(&power.scale(&f.int(c))).expect("square");
        }
        power = power.mul(a).expect("square");
    }
    acc
}

fn random_seed_matrix(m: usize, rng: &mut impl Rng) -> Matrix {
    let f = Field::Rational;
    let mut a = Matrix::zeros(f, m, m);
    match rng.gen_range(0..4) {
        // nilpotent
        0 => {
            for i in 0..m {
                for j in i + 1..m {
                    a.set(i, j, f.int(rng.gen_range(-1..=1)));
                }
            }
        }
        // diagonal
        1 => {
            for i in 0..m {
                a.set(i, i, f.int(rng.gen_range(-2..=2)));
            }
        }
        // rotation blocks
        2 => {
            for i in (0..m.saturating_sub(1)).step_by(2) {
                a.set(i, i + 1, f.int(-1));
                a.set(i + 1, i, f.int(1));
            }
        }
        _ => {
            for i in 0..m {
                for j in i..m {
                    a.set(i, j, f.int(rng.gen_range(-1..=1)));
                }
            }
        }
    }
    a
}

/// `L ⋉ V` where `L` acts through `L/[L,L]` by commuting matrices.
fn abelianized_extension(l: &LieAlgebra, m: usize, rng: &mut impl Rng) -> Result<LieAlgebra> {
    let f = l.field();
    let derived = l.bracket_subspaces(&l.full(), &l.full())?;
    // functionals vanishing on [L, L]
    let annihilator = if derived.is_zero() {
        Subspace::full(f, l.dim())
    } else {
        derived.basis().kernel()
    };
    let seed = random_seed_matrix(m, rng);
    let functionals: Vec<Vector> = annihilator.basis_vectors().map(<[_]>::to_vec).collect();
    let mats: Vec<Matrix> = functionals.iter().map(|_| polynomial_in(&seed, rng, true)).collect();
    let phi = (0..l.dim())
        .map(|i| {
            let mut acc = Matrix::zeros(f, m, m);
            for (lam, mat) in functionals.iter().zip(&mats) {
                if !lam[i].is_zero() {
                    acc = acc.add(&mat.scale(&lam[i])).expect("square");
                }
            }
            acc
        })
        .collect();
    semidirect_product(&Representation::new(l.clone(), m, phi)?)
}

/// A random solvable algebra over `ℚ` of dimension at most `max_dim`, built by
/// repeated semidirect products starting from a line.
pub fn random_solvable_algebra(rng: &mut impl Rng, max_dim: usize) -> Result<LieAlgebra> {
    let mut l = LieAlgebra::abelian(Field::Rational, rng.gen_range(1..=2).min(max_dim.max(1)));
    loop {
        let room = max_dim.saturating_sub(l.dim());
        if room == 0 || (l.dim() >= 3 && rng.gen_bool(0.3)) {
            break;
        }
        let m = rng.gen_range(1..=room.min(3));
        l = if l.dim() + l.dim() <= max_dim && rng.gen_bool(0.15) {
            semidirect_product(&Representation::adjoint(l.clone()))?
        } else {
            abelianized_extension(&l, m, rng)?
        };
    }
    let l = if rng.gen_bool(0.5) { scramble_basis(&l, rng)? } else { l };
    Ok(l.with_name("random-solvable"))
}

/// The same algebra in the basis `b_i = e_i + Σ_{j>i} c_ij e_j` (then reversed with
/// probability 1/2); unitriangular so always invertible.
pub fn scramble_basis(l: &LieAlgebra, rng: &mut impl Rng) -> Result<LieAlgebra> {
    let f = l.field();
    let n = l.dim();
    let mut p = Matrix::identity(f, n);
    for i in 0..n {
        for j in i + 1..n {
            p.set(j, i, f.int(rng.gen_range(-1..=1)));
        }
    }
    if rng.gen_bool(0.5) {
        let rows: Vec<Vector> = (0..n).rev().map(|j| p.column(j)).collect();
        p = Matrix::from_columns(f, n, &rows)?;
    }
    change_basis(l, &p)
}

/// Structure constants in the basis given by the columns of `p`.
pub fn change_basis(l: &LieAlgebra, p: &Matrix) -> Result<LieAlgebra> {
    let f = l.field();
    let n = l.dim();
    let cols: Vec<Vector> = (0..n).map(|j| p.column(j)).collect();
    // coordinates in the new basis: solve p y = x via the rref of [p | I]
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = p.row(i).to_vec();
        row.extend(f.unit_vector(n, i));
        rows.push(row);
    }
    let (r, pivots) = Matrix::from_rows(f, 2 * n, rows)?.rref();
    if pivots.len() < n || pivots[..n].iter().enumerate().any(|(i, &c)| c != i) {
        return Err(crate::error::Error::Precondition("basis change is singular".into()));
    }
    let inv = Matrix::from_rows(f, n, (0..n).map(|i| r.row(i)[n..].to_vec()).collect())?;
    let mut c = vec![vec![f.zero_vector(n); n]; n];
    for i in 0..n {
        for j in 0..n {
            let b = l.bracket(&Element(cols[i].clone()), &Element(cols[j].clone()))?;
            c[i][j] = inv.mul_vec(b.coords())?;
        }
    }
    LieAlgebra::new(l.name(), f, c)
}

/// An abelian algebra of dimension `k` acting on `ℚ^m` by commuting nilpotent
/// matrices (polynomials without constant term in one nilpotent matrix), and
/// a random vector of the module.
pub fn random_nilpotent_action(rng: &mut impl Rng, k: usize, m: usize) -> Result<(Representation, Vector)> {
    let f = Field::Rational;
    let mut n = Matrix::zeros(f, m, m);
    for i in 0..m {
        for j in i + 1..m {
            let c = if j == i + 1 { rng.gen_range(0..=1) } else { rng.gen_range(-1..=1) };
            n.set(i, j, f.int(c));
        }
    }
    let phi = (0..k).map(|_| polynomial_in(&n, rng, false)).collect();
    let rep = Representation::new(LieAlgebra::abelian(f, k), m, phi)?;
    let mut v = random_vector(f, m, rng, 2);
    if v.iter().all(|s| s.is_zero()) && m > 0 {
        v[m - 1] = f.one();
    }
    Ok((rep, v))
}

/// Ideals worth testing: the trivial ones, centers, series terms, centralizers
/// of those, and ideal closures of basis vectors.
pub fn computed_ideals(l: &LieAlgebra) -> Result<Vec<Subspace>> {
    let mut out: Vec<Subspace> = Vec::new();
    let push = |s: Subspace, out: &mut Vec<Subspace>| {
        if !out.contains(&s) {
            out.push(s);
        }
    };
    push(l.zero_subspace(), &mut out);
    push(l.full(), &mut out);
    for s in structure::lower_central_series(l)?.terms {
        push(s, &mut out);
    }
    for s in structure::derived_series(l)?.terms {
        push(s, &mut out);
    }
    for s in structure::upper_central_series(l)?.terms {
        push(s, &mut out);
    }
    for i in 0..l.dim() {
        let s = l.span(&[l.basis_element(i)])?;
        push(l.ideal_closure(&s)?.space, &mut out);
    }
    let snapshot = out.clone();
    for s in &snapshot {
        push(structure::centralizer_of(l, s)?.space, &mut out);
    }
    Ok(out)
}
