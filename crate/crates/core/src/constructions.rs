//! `exp(ad_x)` automorphisms, representations, semidirect products and the
//! annihilation-length experiment for abelian actions.

use serde::Serialize;

use crate::algebra::{Element, LieAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{vector, Field, Matrix, Scalar, Subspace, Vector};
use crate::radicals::ad_nilpotency_index;
use crate::report::Verdict;
use crate::structure;

/// An element of `Int(L)`: a product of `exp(ad_x)` factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InnerAutomorphism {
    pub matrix: Matrix,
    /// Generators, applied right to left as in `exp(x_1)∘⋯∘exp(x_k)`.
    pub word: Vec<Element>,
}

impl InnerAutomorphism {
    pub fn identity(l: &LieAlgebra) -> InnerAutomorphism {
        InnerAutomorphism {
            matrix: Matrix::identity(l.field(), l.dim()),
            word: Vec::new(),
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &InnerAutomorphism) -> Result<InnerAutomorphism> {
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        Ok(InnerAutomorphism {
            matrix: self.matrix.mul(&other.matrix)?,
            word,
        })
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        Ok(Element(self.matrix.mul_vec(x.coords())?))
    }
}

fn factorial_inverse(k: usize) -> Scalar {
    let f = Field::Rational;
    let mut acc = f.one();
    for i in 1..=k {
        acc = &acc * &f.int(i as i64);
    }
    acc.inv().expect("factorial is nonzero")
}

/// `Σ_{i<k} ad_x^i / i!` where `k` is the nilpotency index of `ad_x`.
pub fn exp_ad(l: &LieAlgebra, x: &Element) -> Result<InnerAutomorphism> {
    if l.field() != Field::Rational {
        return Err(Error::WrongCharacteristic(l.field().characteristic()));
    }
    let k = ad_nilpotency_index(l, x)?.ok_or(Error::NotAdNilpotent)?;
    let ad = l.ad(x)?;
    let mut sum = Matrix::zeros(l.field(), l.dim(), l.dim());
    let mut power = Matrix::identity(l.field(), l.dim());
    for i in 0..k {
        sum = sum.add(&power.scale(&factorial_inverse(i)))?;
        power = power.mul(&ad)?;
    }
    let g = InnerAutomorphism {
        matrix: sum,
        word: vec![x.clone()],
    };
    if !is_automorphism(l, &g.matrix)? {
        return Err(Error::Internal("exp(ad x) does not preserve the bracket".into()));
    }
    Ok(g)
}

/// `m([e_i, e_j]) = [m(e_i), m(e_j)]` on all basis pairs, and `m` is invertible.
pub fn is_automorphism(l: &LieAlgebra, m: &Matrix) -> Result<bool> {
    if m.rows() != l.dim() || m.cols() != l.dim() || m.rank() != l.dim() {
        return Ok(false);
    }
    let images: Vec<Vector> = (0..l.dim()).map(|j| m.column(j)).collect();
    for i in 0..l.dim() {
        for j in i + 1..l.dim() {
            let lhs = m.mul_vec(l.c(i, j))?;
            let rhs = l.bracket_coords(&images[i], &images[j]);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Image `g(A)`.
pub fn conjugate_subspace(a: &Subspace, g: &InnerAutomorphism) -> Result<Subspace> {
    a.image(&g.matrix)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizationReport {
    /// `[b, A] ⊆ A`
    pub normalizes: bool,
    /// `exp(b)(A) = A`
    pub exp_stabilizes: bool,
}

impl NormalizationReport {
    pub fn consistent(&self) -> bool {
        self.normalizes == self.exp_stabilizes
    }
}

pub fn check_normalization_lemma(l: &LieAlgebra, b: &Element, a: &Subspace) -> Result<NormalizationReport> {
    let g = exp_ad(l, b)?;
    let normalizes = l
        .bracket_subspaces(&l.span(std::slice::from_ref(b))?, a)?
        .is_subspace_of(a)?;
    let exp_stabilizes = &conjugate_subspace(a, &g)? == a;
    Ok(NormalizationReport {
        normalizes,
        exp_stabilizes,
    })
}

/// `C_L(S)^g = C_L(S^g)`.
pub fn check_conjugate_centralizer(l: &LieAlgebra, s: &Subspace, g: &InnerAutomorphism) -> Result<Verdict> {
    let lhs = conjugate_subspace(&structure::centralizer_of(l, s)?.space, g)?;
    let rhs = structure::centralizer_of(l, &conjugate_subspace(s, g)?)?.space;
    if lhs == rhs {
        Ok(Verdict::Holds)
    } else {
        Ok(Verdict::Fails(format!(
            "C(S)^g has dimension {} but C(S^g) has dimension {}",
            lhs.dim(),
            rhs.dim()
        )))
    }
}

/// Coefficients `a_1..a_k` with `Σ_n a_n n^i / i! = δ_{i,1}` for `0 ≤ i < k`, so
/// that `d = Σ_n a_n exp(n d)` for every derivation with `d^k = 0`.
pub fn hartley_coefficients(k: usize) -> Result<Vec<Scalar>> {
    let f = Field::Rational;
    // augmented Vandermonde system, rows indexed by the power i
    let rows: Vec<Vector> = (0..k)
        .map(|i| {
            let mut row: Vector = (1..=k)
                .map(|n| {
                    let mut p = f.one();
                    for _ in 0..i {
                        p = &p * &f.int(n as i64);
                    }
                    &p * &factorial_inverse(i)
                })
                .collect();
            row.push(if i == 1 { f.one() } else { f.zero() });
            row
        })
        .collect();
    let (r, pivots) = Matrix::from_rows(f, k + 1, rows)?.rref();
    if pivots != (0..k).collect::<Vec<_>>() {
        return Err(Error::Internal("Vandermonde system is singular".into()));
    }
    Ok((0..k).map(|i| r.get(i, k).clone()).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct HartleyReport {
    pub index: usize,
    pub coefficients: Vec<Scalar>,
    pub reconstructs: bool,
}

/// Checks `ad_x = Σ_{n=1}^{k} a_n exp(ad_{n x})` as matrices.
pub fn check_hartley(l: &LieAlgebra, x: &Element) -> Result<HartleyReport> {
    let k = ad_nilpotency_index(l, x)?.ok_or(Error::NotAdNilpotent)?;
    let coefficients = hartley_coefficients(k)?;
    let mut sum = Matrix::zeros(l.field(), l.dim(), l.dim());
    for (n, a) in coefficients.iter().enumerate() {
        let g = exp_ad(l, &x.scale(&l.field().int(n as i64 + 1)))?;
        sum = sum.add(&g.matrix.scale(a))?;
    }
    Ok(HartleyReport {
        index: k,
        reconstructs: sum == l.ad(x)?,
        coefficients,
    })
}

/// A Lie homomorphism `φ: L → gl(V)` given on the basis of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    source: LieAlgebra,
    module_dim: usize,
    phi: Vec<Matrix>,
}

impl Representation {
    /// Validates `φ([e_i, e_j]) = [φ(e_i), φ(e_j)]` on every basis pair.
    pub fn new(source: LieAlgebra, module_dim: usize, phi: Vec<Matrix>) -> Result<Representation> {
        if phi.len() != source.dim() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for an algebra of dimension {}",
                phi.len(),
                source.dim()
            )));
        }
        for (i, m) in phi.iter().enumerate() {
            if m.field() != source.field() || m.rows() != module_dim || m.cols() != module_dim {
                return Err(Error::InvalidRepresentation(format!(
                    "phi(e{}) is not a {module_dim}x{module_dim} matrix over {}",
                    i + 1,
                    source.field()
                )));
            }
        }
        let rep = Representation {
            source,
            module_dim,
            phi,
        };
        for i in 0..rep.source.dim() {
            for j in i + 1..rep.source.dim() {
                let lhs = rep.apply_coords(rep.source.c(i, j));
                let rhs = rep.phi[i].commutator(&rep.phi[j])?;
                if lhs != rhs {
                    return Err(Error::InvalidRepresentation(format!(
                        "phi([e{},e{}]) != [phi(e{}), phi(e{})]",
                        i + 1,
                        j + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(rep)
    }

    pub fn zero(source: LieAlgebra, module_dim: usize) -> Representation {
        let phi = vec![Matrix::zeros(source.field(), module_dim, module_dim); source.dim()];
        Representation {
            source,
            module_dim,
            phi,
        }
    }

    pub fn adjoint(source: LieAlgebra) -> Representation {
        let phi = source.ad_basis().to_vec();
        Representation {
            module_dim: source.dim(),
            source,
            phi,
        }
    }

    pub fn source(&self) -> &LieAlgebra {
        &self.source
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn phi(&self) -> &[Matrix] {
        &self.phi
    }

    fn apply_coords(&self, x: &[Scalar]) -> Matrix {
        let f = self.source.field();
        let mut acc = Matrix::zeros(f, self.module_dim, self.module_dim);
        for (c, m) in x.iter().zip(&self.phi) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c)).expect("same shape");
            }
        }
        acc
    }

    pub fn phi_of(&self, x: &Element) -> Result<Matrix> {
        if x.coords().len() != self.source.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source.dim(),
                found: x.coords().len(),
            });
        }
        Ok(self.apply_coords(x.coords()))
    }
}

/// `L ⋉ V` with basis `(e_1..e_n, v_1..v_m)` and
/// `[(g, v), (g', v')] = ([g, g'], φ(g)v' − φ(g')v)`.
pub fn semidirect_product(rep: &Representation) -> Result<LieAlgebra> {
    let l = rep.source();
    let (n, m) = (l.dim(), rep.module_dim());
    let f = l.field();
    let d = n + m;
    let mut c = vec![vec![f.zero_vector(d); d]; d];
    for i in 0..n {
        for j in 0..n {
            c[i][j][..n].clone_from_slice(l.c(i, j));
        }
        for a in 0..m {
            let image = rep.phi()[i].column(a);
            c[n + a][i][n..].clone_from_slice(&vector::neg(&image));
            c[i][n + a][n..].clone_from_slice(&image);
        }
    }
    LieAlgebra::new(format!("{}x{}", l.name(), m), f, c)
        .map_err(|e| Error::InvalidRepresentation(format!("semidirect product fails validation: {e}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub witness: Vec<Element>,
    /// Nilpotency index of each `φ(x_i)` on `v`.
    pub indices: Vec<usize>,
    /// `1 + Σ (n_i − 1)`
    pub bound: usize,
    pub annihilates_at_bound: bool,
    /// Least `ℓ` with `[L,_ℓ v] = 0`.
    pub minimal_length: usize,
    /// Ordered products visited while expanding length-`bound` words.
    pub products_checked: u64,
}

fn index_on_vector(m: &Matrix, v: &[Scalar], limit: usize) -> Result<Option<usize>> {
    let mut cur = v.to_vec();
    for k in 0..=limit {
        if vector::is_zero(&cur) {
            return Ok(Some(k));
        }
        cur = m.mul_vec(&cur)?;
    }
    Ok(None)
}

/// Expands every ordered product `φ(e_{i_1})⋯φ(e_{i_len}) v`; a zero prefix
/// kills all of its extensions, which are counted without being multiplied out.
fn all_products_vanish(phi: &[Matrix], v: &[Scalar], len: usize, count: &mut u64) -> Result<bool> {
    if vector::is_zero(v) {
        *count += (phi.len() as u64).saturating_pow(len as u32);
        return Ok(true);
    }
    if len == 0 {
        *count += 1;
        return Ok(false);
    }
    for m in phi {
        if !all_products_vanish(phi, &m.mul_vec(v)?, len - 1, count)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For an abelian `L` acting on `V` with `C_V(L) = C_V(x_1..x_k)` and `φ(x_i)^{n_i} v = 0`,
/// checks `[L,_m v] = 0` at `m = 1 + Σ(n_i − 1)`.
///
/// Without an explicit witness, `x_1..x_k` comes from the greedy finite-witness
/// search on the image of `L` inside `L ⋉ V`.
pub fn semidirect_bound_experiment(
    rep: &Representation,
    v: &[Scalar],
    witness: Option<&[Element]>,
) -> Result<BoundReport> {
    let l = rep.source();
    if structure::nilpotency_class(l)?.is_none_or(|c| c > 1) {
        return Err(Error::Precondition("source algebra must be abelian".into()));
    }
    let (n, m) = (l.dim(), rep.module_dim());
    if v.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: v.len(),
        });
    }
    let f = l.field();
    let fixed_by = |xs: &[Element]| -> Result<Subspace> {
        let mats = xs.iter().map(|x| rep.phi_of(x)).collect::<Result<Vec<_>>>()?;
        if mats.is_empty() {
            return Ok(Subspace::full(f, m));
        }
        Ok(Matrix::stack(f, m, &mats)?.kernel())
    };
    let basis: Vec<Element> = (0..n).map(|i| l.basis_element(i)).collect();
    let witness: Vec<Element> = match witness {
        Some(w) => {
            if fixed_by(w)? != fixed_by(&basis)? {
                return Err(Error::Precondition("witness does not cut out C_V(L)".into()));
            }
            w.to_vec()
        }
        None => {
            let a = semidirect_product(rep)?;
            let lpart = Subspace::span(
                f,
                n + m,
                &(0..n).map(|i| f.unit_vector(n + m, i)).collect::<Vec<_>>(),
            )?;
            structure::centralizer_finite_witness(&a, &lpart)?
                .into_iter()
                .map(|x| Element(x.coords()[..n].to_vec()))
                .collect()
        }
    };
    let mut indices = Vec::with_capacity(witness.len());
    for x in &witness {
        let px = rep.phi_of(x)?;
        indices.push(
            index_on_vector(&px, v, m)?
                .ok_or_else(|| Error::Precondition(format!("phi({x}) is not nilpotent on v")))?,
        );
    }
    let bound = 1 + indices.iter().map(|&k| k.saturating_sub(1)).sum::<usize>();
    let mut products_checked = 0;
    let annihilates_at_bound = all_products_vanish(rep.phi(), v, bound, &mut products_checked)?;

    let mut level = Subspace::span(f, m, &[v.to_vec()])?;
    let mut minimal_length = 0;
    while !level.is_zero() {
        if minimal_length > m {
            return Err(Error::Precondition("L does not annihilate v in finitely many steps".into()));
        }
        let images = rep
            .phi()
            .iter()
            .flat_map(|p| level.basis_vectors().map(move |w| p.mul_vec(w)))
            .collect::<Result<Vec<_>>>()?;
        level = Subspace::span(f, m, &images)?;
        minimal_length += 1;
    }
    Ok(BoundReport {
        witness,
        indices,
        bound,
        annihilates_at_bound,
        minimal_length,
        products_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn q() -> Field {
        Field::Rational
    }

    fn ints(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q().int(x)).collect()
    }

    #[test]
    fn exp_examples() {
        let h3 = corpus::algebra("h3").unwrap();
        assert_eq!(exp_ad(&h3, &h3.zero_element()).unwrap().matrix, Matrix::identity(q(), 3));
        let g = exp_ad(&h3, &h3.basis_element(0)).unwrap();
        assert_eq!(g.apply(&h3.basis_element(1)).unwrap(), h3.element_from_ints(&[0, 1, 1]).unwrap());
        assert_eq!(g.apply(&h3.basis_element(0)).unwrap(), h3.basis_element(0));
        assert_eq!(g.apply(&h3.basis_element(2)).unwrap(), h3.basis_element(2));

        // sl2 basis (h, e, f)
        let sl2 = corpus::algebra("sl2").unwrap();
        let g = exp_ad(&sl2, &sl2.basis_element(1)).unwrap();
        assert_eq!(g.apply(&sl2.basis_element(0)).unwrap(), sl2.element_from_ints(&[1, -2, 0]).unwrap());
        assert_eq!(g.apply(&sl2.basis_element(2)).unwrap(), sl2.element_from_ints(&[1, -1, 1]).unwrap());
        assert_eq!(exp_ad(&sl2, &sl2.basis_element(0)).unwrap_err(), Error::NotAdNilpotent);

        let ginv = exp_ad(&sl2, &sl2.basis_element(1).neg()).unwrap();
        assert_eq!(g.compose(&ginv).unwrap().matrix, Matrix::identity(q(), 3));

        let f3 = corpus::algebra("h3-f3").unwrap();
        assert_eq!(exp_ad(&f3, &f3.basis_element(0)).unwrap_err(), Error::WrongCharacteristic(3));
    }

    #[test]
    fn conjugation_examples() {
        let h3 = corpus::algebra("h3").unwrap();
        let e2 = h3.span(&[h3.basis_element(1)]).unwrap();
        assert_eq!(conjugate_subspace(&e2, &InnerAutomorphism::identity(&h3)).unwrap(), e2);
        let g = exp_ad(&h3, &h3.basis_element(0)).unwrap();
        let img = conjugate_subspace(&e2, &g).unwrap();
        assert_eq!(img, h3.span(&[h3.element_from_ints(&[0, 1, 1]).unwrap()]).unwrap());
    }

    #[test]
    fn normalization_examples() {
        let h3 = corpus::algebra("h3").unwrap();
        let e1 = h3.basis_element(0);
        let r = check_normalization_lemma(&h3, &e1, &h3.span(&[h3.basis_element(1)]).unwrap()).unwrap();
        assert_eq!((r.normalizes, r.exp_stabilizes), (false, false));
        let a = h3.span(&[h3.basis_element(1), h3.basis_element(2)]).unwrap();
        let r = check_normalization_lemma(&h3, &e1, &a).unwrap();
        assert_eq!((r.normalizes, r.exp_stabilizes), (true, true));
        let a = h3.span(std::slice::from_ref(&e1)).unwrap();
        let r = check_normalization_lemma(&h3, &e1, &a).unwrap();
        assert_eq!((r.normalizes, r.exp_stabilizes), (true, true));
    }

    #[test]
    fn hartley_coefficients_small_cases() {
        // k = 2: a1 + a2 = 0, a1 + 2 a2 = 1
        assert_eq!(hartley_coefficients(2).unwrap(), ints(&[-1, 1]));
        assert_eq!(hartley_coefficients(1).unwrap(), ints(&[0]));
        let sl2 = corpus::algebra("sl2").unwrap();
        assert!(check_hartley(&sl2, &sl2.basis_element(1)).unwrap().reconstructs);
    }

    #[test]
    fn representation_validation() {
        let sl2 = corpus::algebra("sl2").unwrap();
        let bad = vec![Matrix::identity(q(), 2); 3];
        assert!(matches!(
            Representation::new(sl2.clone(), 2, bad),
            Err(Error::InvalidRepresentation(_))
        ));
        // standard representation h=diag(1,-1), e=E12, f=E21
        let std = vec![
            Matrix::from_ints(q(), &[&[1, 0], &[0, -1]]),
            Matrix::from_ints(q(), &[&[0, 1], &[0, 0]]),
            Matrix::from_ints(q(), &[&[0, 0], &[1, 0]]),
        ];
        let rep = Representation::new(sl2, 2, std).unwrap();
        assert_eq!(semidirect_product(&rep).unwrap().dim(), 5);
    }

    #[test]
    fn semidirect_examples() {
        let h3 = corpus::algebra("h3").unwrap();
        let zero = semidirect_product(&Representation::zero(h3.clone(), 2)).unwrap();
        assert_eq!(zero, h3.direct_sum(&LieAlgebra::abelian(q(), 2)).unwrap().with_name(zero.name()));

        let line = LieAlgebra::abelian(q(), 1);
        let shift = Representation::new(line, 2, vec![Matrix::from_ints(q(), &[&[0, 1], &[0, 0]])]).unwrap();
        let a = semidirect_product(&shift).unwrap();
        // [x, v2] = v1, everything else zero: h3 with e1=x, e2=v2, e3=v1
        assert_eq!(a.c(0, 2), ints(&[0, 1, 0]).as_slice());
        assert_eq!(structure::nilpotency_class(&a).unwrap(), Some(2));
        assert_eq!(structure::center(&a).unwrap().dim(), 1);

        let adj = semidirect_product(&Representation::adjoint(h3)).unwrap();
        assert_eq!(adj.dim(), 6);
    }

    #[test]
    fn bound_examples() {
        let line = LieAlgebra::abelian(q(), 1);
        let jordan = Representation::new(line, 2, vec![Matrix::from_ints(q(), &[&[0, 1], &[0, 0]])]).unwrap();
        let r = semidirect_bound_experiment(&jordan, &ints(&[0, 1]), None).unwrap();
        assert_eq!((r.indices.clone(), r.bound), (vec![2], 2));
        assert!(r.annihilates_at_bound);
        assert_eq!(r.minimal_length, 2);

        let r = semidirect_bound_experiment(&jordan, &ints(&[1, 0]), None).unwrap();
        assert_eq!(r.bound, 1);
        assert!(r.annihilates_at_bound);

        // x1 -> N^2, x2 -> N with N the 4x4 shift; v = e3 has indices 2 and 3
        let n = Matrix::from_ints(q(), &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]);
        let plane = LieAlgebra::abelian(q(), 2);
        let rep = Representation::new(plane.clone(), 4, vec![n.mul(&n).unwrap(), n.clone()]).unwrap();
        let v = ints(&[0, 0, 1, 0]);
        let w = [plane.basis_element(0), plane.basis_element(1)];
        let r = semidirect_bound_experiment(&rep, &v, Some(&w)).unwrap();
        assert_eq!((r.indices.clone(), r.bound), (vec![2, 3], 4));
        assert!(r.annihilates_at_bound);
        assert_eq!(r.products_checked, 16);
        assert_eq!(r.minimal_length, 3);

        let sl2 = corpus::algebra("sl2").unwrap();
        assert!(matches!(
            semidirect_bound_experiment(&Representation::zero(sl2, 1), &ints(&[1]), None),
            Err(Error::Precondition(_))
        ));
    }
}
