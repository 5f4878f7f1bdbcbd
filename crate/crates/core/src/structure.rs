//! Centralizers, normalizers, iterated centralizers and the classical series.

use serde::Serialize;

use crate::algebra::{Element, LieAlgebra, SubStructure};
use crate::error::{Error, Result};
use crate::exactlin::{Echelon, Matrix, Subspace};
use crate::report::{CheckReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
    UpperCentral,
    IteratedCentralizer,
}

/// Terms of a series up to (not repeating) the term where it stabilises.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Series {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub stabilized: bool,
}

impl Series {
    fn iterate(
        kind: SeriesKind,
        start: Subspace,
        bound: usize,
        mut step: impl FnMut(&Subspace) -> Result<Subspace>,
    ) -> Result<Series> {
        let mut terms = vec![start];
        for _ in 0..=bound {
            let next = step(terms.last().expect("nonempty"))?;
            if &next == terms.last().expect("nonempty") {
                return Ok(Series {
                    kind,
                    terms,
                    stabilized: true,
                });
            }
            terms.push(next);
        }
        Ok(Series {
            kind,
            terms,
            stabilized: false,
        })
    }

    pub fn last(&self) -> &Subspace {
        self.terms.last().expect("series has a first term")
    }

    /// Index of the first zero term.
    pub fn first_zero(&self) -> Option<usize> {
        self.terms.iter().position(Subspace::is_zero)
    }

    /// Index of the first full term.
    pub fn first_full(&self) -> Option<usize> {
        self.terms.iter().position(Subspace::is_full)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
}

pub fn centralizer(l: &LieAlgebra, xs: &[Element]) -> Result<SubStructure> {
    let ads = xs.iter().map(|x| l.ad(x)).collect::<Result<Vec<_>>>()?;
    let space = if ads.is_empty() {
        l.full()
    } else {
        Matrix::stack(l.field(), l.dim(), &ads)?.kernel()
    };
    l.classify(space)
}

/// `C_L(S)` for a subspace `S`.
pub fn centralizer_of(l: &LieAlgebra, s: &Subspace) -> Result<SubStructure> {
    l.classify(l.bracket_preimage(s, &l.zero_subspace())?)
}

pub fn center(l: &LieAlgebra) -> Result<Subspace> {
    l.bracket_preimage(&l.full(), &l.zero_subspace())
}

pub fn normalizer(l: &LieAlgebra, a: &Subspace) -> Result<SubStructure> {
    l.classify(l.bracket_preimage(a, a)?)
}

/// Terms `C^0, ..., C^n` of the iterated centralizers of `A/H`, by the recursive definition
/// `C^{k+1} = {x ∈ ∩_{1≤i≤k} N_L(C^i) : [x, A] ⊆ C^k}` with `C^0 = H`.
pub fn iterated_centralizer_terms(
    l: &LieAlgebra,
    a: &Subspace,
    h: &Subspace,
    n: usize,
) -> Result<Vec<Subspace>> {
    if !l.is_subalgebra(a)? {
        return Err(Error::Precondition("A must be a subalgebra".into()));
    }
    if !l.is_ideal_of(h, a)? {
        return Err(Error::Precondition("H must be an ideal of A".into()));
    }
    let mut terms = vec![h.clone()];
    let mut normalizers: Vec<Subspace> = Vec::new();
    for k in 0..n {
        let mut next = l.bracket_preimage(a, &terms[k])?;
        for nz in &normalizers {
            next = next.intersect(nz)?;
        }
        normalizers.push(l.bracket_preimage(&next, &next)?);
        terms.push(next);
    }
    Ok(terms)
}

pub fn iterated_centralizer(l: &LieAlgebra, a: &Subspace, h: &Subspace, n: usize) -> Result<SubStructure> {
    let terms = iterated_centralizer_terms(l, a, h, n)?;
    l.classify(terms.into_iter().last().expect("C^0 present"))
}

/// `{x : [I,_n x] = 0}` for an ideal `I`: the common kernel of all composites
/// `ad_{a_1}∘⋯∘ad_{a_n}`. The composites are collected as a span inside the
/// space of `dim × dim` matrices, grown one factor at a time.
pub fn iterated_centralizer_of_ideal(l: &LieAlgebra, i: &Subspace, n: usize) -> Result<SubStructure> {
    l.check_subspace(i)?;
    if !l.is_ideal(i)? {
        return Err(Error::NotAnIdeal);
    }
    let d = l.dim();
    let f = l.field();
    let factors: Vec<Matrix> = i.basis_vectors().map(|v| l.ad_of_vector(v)).collect();
    // span of the length-0 word is the identity
    let mut words = Subspace::span(f, d * d, &[Matrix::identity(f, d).entries().to_vec()])?;
    for _ in 0..n {
        let mut next = Echelon::new(f, d * d);
        for w in words.basis_vectors() {
            let w = Matrix::from_flat(f, d, d, w.to_vec())?;
            for a in &factors {
                next.insert(a.mul(&w)?.entries())?;
            }
        }
        words = next.into_subspace();
    }
    let blocks = words
        .basis_vectors()
        .map(|w| Matrix::from_flat(f, d, d, w.to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let space = if blocks.is_empty() {
        l.full()
    } else {
        Matrix::stack(f, d, &blocks)?.kernel()
    };
    l.classify(space)
}

pub fn lower_central_series(l: &LieAlgebra) -> Result<Series> {
    let full = l.full();
    Series::iterate(SeriesKind::LowerCentral, full.clone(), l.dim(), |t| {
        l.bracket_subspaces(&full, t)
    })
}

pub fn derived_series(l: &LieAlgebra) -> Result<Series> {
    Series::iterate(SeriesKind::Derived, l.full(), l.dim(), |t| l.bracket_subspaces(t, t))
}

/// `Z_0 = 0`, `Z_{i+1}` = preimage of `Z(L/Z_i)`, computed in the quotient algebra.
pub fn upper_central_series(l: &LieAlgebra) -> Result<Series> {
    Series::iterate(SeriesKind::UpperCentral, l.zero_subspace(), l.dim(), |z| {
        let q = l.quotient(z)?;
        let zq = center(&q.algebra)?;
        q.preimage(&zq)
    })
}

/// Iterated centralizers of `A/H` until they repeat.
pub fn iterated_centralizer_series(l: &LieAlgebra, a: &Subspace, h: &Subspace) -> Result<Series> {
    let terms = iterated_centralizer_terms(l, a, h, l.dim() + 1)?;
    let mut out = vec![terms[0].clone()];
    for t in terms.into_iter().skip(1) {
        if &t == out.last().expect("nonempty") {
            return Ok(Series {
                kind: SeriesKind::IteratedCentralizer,
                terms: out,
                stabilized: true,
            });
        }
        out.push(t);
    }
    Ok(Series {
        kind: SeriesKind::IteratedCentralizer,
        terms: out,
        stabilized: false,
    })
}

/// Nilpotency class: least `c` with `L^c = 0` (`L^0 = L`, `L^1 = [L, L]`).
pub fn nilpotency_class(l: &LieAlgebra) -> Result<Option<usize>> {
    Ok(lower_central_series(l)?.first_zero())
}

/// Derived length: least `k` with `L^(k) = 0`.
pub fn derived_length(l: &LieAlgebra) -> Result<Option<usize>> {
    Ok(derived_series(l)?.first_zero())
}

pub fn is_nilpotent(l: &LieAlgebra) -> Result<Option<usize>> {
    nilpotency_class(l)
}

pub fn is_solvable(l: &LieAlgebra) -> Result<Option<usize>> {
    derived_length(l)
}

/// Lower central series of a subalgebra `H`: `H^0 = H`, `H^{i+1} = [H, H^i]`, `count` terms.
pub fn subalgebra_lower_central(l: &LieAlgebra, h: &Subspace, count: usize) -> Result<Vec<Subspace>> {
    let mut out = vec![h.clone()];
    while out.len() < count {
        let next = l.bracket_subspaces(h, out.last().expect("nonempty"))?;
        out.push(next);
    }
    Ok(out)
}

/// A finite tuple from `S` with the same centralizer as `S`.
///
/// Greedy: add the basis vector of `S` that shrinks the running centralizer
/// the most (lowest index on ties) until it reaches `C_L(S)`.
pub fn centralizer_finite_witness(l: &LieAlgebra, s: &Subspace) -> Result<Vec<Element>> {
    l.check_subspace(s)?;
    let target = l.bracket_preimage(s, &l.zero_subspace())?;
    let candidates: Vec<(Element, Subspace)> = s
        .basis_vectors()
        .map(|v| {
            let e = Element(v.to_vec());
            let c = centralizer(l, std::slice::from_ref(&e)).map(|c| c.space);
            c.map(|c| (e, c))
        })
        .collect::<Result<_>>()?;
    let mut current = l.full();
    let mut witness = Vec::new();
    while current != target {
        let mut best: Option<(usize, Subspace)> = None;
        for (idx, (_, c)) in candidates.iter().enumerate() {
            let next = current.intersect(c)?;
            if next.dim() < current.dim() && best.as_ref().is_none_or(|(_, b)| next.dim() < b.dim()) {
                best = Some((idx, next));
            }
        }
        let (idx, next) = best.ok_or_else(|| Error::Internal("witness search stalled".into()))?;
        witness.push(candidates[idx].0.clone());
        current = next;
    }
    Ok(witness)
}

/// `[H^i, C^j(H)] ⊆ C^{j-i-1}(H)` for all `0 ≤ i < j ≤ bound`, where `C^j(H)` is
/// the iterated centralizer of `H/0`.
pub fn check_lemma_cent_it_1(l: &LieAlgebra, h: &Subspace, bound: usize) -> Result<CheckReport> {
    if !l.is_subalgebra(h)? {
        return Err(Error::NotASubalgebra);
    }
    let powers = subalgebra_lower_central(l, h, bound + 1)?;
    let cents = iterated_centralizer_terms(l, h, &l.zero_subspace(), bound)?;
    let mut report = CheckReport::new("lemma-cent-it-1");
    for j in 1..=bound {
        for i in 0..j {
            let lhs = l.bracket_subspaces(&powers[i], &cents[j])?;
            let ok = lhs.is_subspace_of(&cents[j - i - 1])?;
            report.expect(
                ok,
                format!("i={i} j={j}"),
                format!("[H^{i}, C^{j}(H)] has dimension {} and escapes C^{}(H)", lhs.dim(), j - i - 1),
            );
        }
    }
    Ok(report)
}

/// For `K ≤ H`: if `C_L(K^i) = C_L(H^i)` for every `i < j` then `C^j(K) = C^j(H)`.
pub fn check_lemma_cent_it_2(l: &LieAlgebra, k: &Subspace, h: &Subspace, j: usize) -> Result<Verdict> {
    if !l.is_subalgebra(k)? || !l.is_subalgebra(h)? {
        return Err(Error::NotASubalgebra);
    }
    if !k.is_subspace_of(h)? {
        return Err(Error::Precondition("K must be contained in H".into()));
    }
    let kp = subalgebra_lower_central(l, k, j.max(1))?;
    let hp = subalgebra_lower_central(l, h, j.max(1))?;
    let zero = l.zero_subspace();
    for i in 0..j {
        if l.bracket_preimage(&kp[i], &zero)? != l.bracket_preimage(&hp[i], &zero)? {
            return Ok(Verdict::NotApplicable);
        }
    }
    let ck = iterated_centralizer_terms(l, k, &zero, j)?;
    let ch = iterated_centralizer_terms(l, h, &zero, j)?;
    if ck[j] == ch[j] {
        Ok(Verdict::Holds)
    } else {
        Ok(Verdict::Fails(format!(
            "C^{j}(K) has dimension {} but C^{j}(H) has dimension {}",
            ck[j].dim(),
            ch[j].dim()
        )))
    }
}

/// If `[[X,Y],Z] ⊆ H` and `[[Y,Z],X] ⊆ H` then `[[Z,X],Y] ⊆ H`.
pub fn check_three_subgroups(
    l: &LieAlgebra,
    x: &Subspace,
    y: &Subspace,
    z: &Subspace,
    h: &Subspace,
) -> Result<Verdict> {
    let xyz = l.bracket_subspaces(&l.bracket_subspaces(x, y)?, z)?;
    let yzx = l.bracket_subspaces(&l.bracket_subspaces(y, z)?, x)?;
    if !xyz.is_subspace_of(h)? || !yzx.is_subspace_of(h)? {
        return Ok(Verdict::NotApplicable);
    }
    let zxy = l.bracket_subspaces(&l.bracket_subspaces(z, x)?, y)?;
    if zxy.is_subspace_of(h)? {
        Ok(Verdict::Holds)
    } else {
        Ok(Verdict::Fails(format!(
            "[[Z,X],Y] (dimension {}) is not contained in H",
            zxy.dim()
        )))
    }
}

/// `N_L(A) ⊆ N_L(C^i(A))` for `1 ≤ i ≤ n`.
pub fn check_normalizer_monotone(l: &LieAlgebra, a: &Subspace, n: usize) -> Result<CheckReport> {
    let na = l.bracket_preimage(a, a)?;
    let cents = iterated_centralizer_terms(l, a, &l.zero_subspace(), n)?;
    let mut report = CheckReport::new("normalizer-monotone");
    for (i, c) in cents.iter().enumerate().skip(1) {
        let nc = l.bracket_preimage(c, c)?;
        report.expect(
            na.is_subspace_of(&nc)?,
            format!("n={i}"),
            "N(A) is not contained in N(C^n(A))",
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SubKind;
    use crate::corpus;

    fn span(l: &LieAlgebra, idx: &[usize]) -> Subspace {
        l.span(&idx.iter().map(|&i| l.basis_element(i)).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn centralizer_examples() {
        let h3 = corpus::algebra("h3").unwrap();
        assert_eq!(centralizer(&h3, &[]).unwrap().space, h3.full());
        let c = centralizer(&h3, &[h3.basis_element(0)]).unwrap();
        assert_eq!(c.space, span(&h3, &[0, 2]));
        assert_eq!(c.kind, SubKind::Ideal);
        let sl2 = corpus::algebra("sl2").unwrap();
        let c = centralizer(&sl2, &[sl2.basis_element(0)]).unwrap();
        assert_eq!(c.space, span(&sl2, &[0]));
        assert_eq!(c.kind, SubKind::Subalgebra);
    }

    #[test]
    fn normalizer_examples() {
        let h3 = corpus::algebra("h3").unwrap();
        assert_eq!(normalizer(&h3, &span(&h3, &[2])).unwrap().space, h3.full());
        let sl2 = corpus::algebra("sl2").unwrap();
        assert_eq!(normalizer(&sl2, &span(&sl2, &[1])).unwrap().space, span(&sl2, &[0, 1]));
        assert_eq!(normalizer(&sl2, &sl2.zero_subspace()).unwrap().space, sl2.full());
    }

    #[test]
    fn iterated_centralizer_examples() {
        let h3 = corpus::algebra("h3").unwrap();
        let (full, zero) = (h3.full(), h3.zero_subspace());
        assert_eq!(iterated_centralizer(&h3, &full, &zero, 0).unwrap().space, zero);
        assert_eq!(iterated_centralizer(&h3, &full, &zero, 1).unwrap().space, span(&h3, &[2]));
        assert_eq!(iterated_centralizer(&h3, &full, &zero, 2).unwrap().space, full);
        for n in 0..=3 {
            assert_eq!(
                iterated_centralizer_of_ideal(&h3, &full, n).unwrap().space,
                iterated_centralizer(&h3, &full, &zero, n).unwrap().space
            );
        }
        let e1 = span(&h3, &[0]);
        assert_eq!(
            iterated_centralizer_of_ideal(&h3, &e1, 1).unwrap_err(),
            Error::NotAnIdeal
        );
        // H not inside A
        assert!(matches!(
            iterated_centralizer(&h3, &span(&h3, &[2]), &e1, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn series_examples() {
        let ab = LieAlgebra::abelian(crate::exactlin::Field::Rational, 3);
        assert_eq!(nilpotency_class(&ab).unwrap(), Some(1));
        assert!(upper_central_series(&ab).unwrap().terms[1].is_full());

        let h3 = corpus::algebra("h3").unwrap();
        let lcs = lower_central_series(&h3).unwrap();
        assert_eq!(lcs.dims(), vec![3, 1, 0]);
        assert_eq!(nilpotency_class(&h3).unwrap(), Some(2));
        let ucs = upper_central_series(&h3).unwrap();
        assert_eq!(ucs.terms, vec![h3.zero_subspace(), span(&h3, &[2]), h3.full()]);

        let sl2 = corpus::algebra("sl2").unwrap();
        let ucs = upper_central_series(&sl2).unwrap();
        assert_eq!(ucs.terms, vec![sl2.zero_subspace()]);
        assert!(ucs.stabilized);
        assert_eq!(is_nilpotent(&sl2).unwrap(), None);
        assert_eq!(is_solvable(&sl2).unwrap(), None);

        let aff = corpus::algebra("aff1").unwrap();
        let lcs = lower_central_series(&aff).unwrap();
        assert_eq!(lcs.last(), &span(&aff, &[1]));
        assert_eq!(nilpotency_class(&aff).unwrap(), None);
        assert_eq!(derived_length(&aff).unwrap(), Some(2));
    }

    #[test]
    fn witness_examples() {
        let h3 = corpus::algebra("h3").unwrap();
        assert!(centralizer_finite_witness(&h3, &h3.zero_subspace()).unwrap().is_empty());
        let ab = LieAlgebra::abelian(crate::exactlin::Field::Rational, 3);
        assert!(centralizer_finite_witness(&ab, &ab.full()).unwrap().is_empty());
        let w = centralizer_finite_witness(&h3, &h3.full()).unwrap();
        assert!(w.len() <= 2);
        assert_eq!(centralizer(&h3, &w).unwrap().space, span(&h3, &[2]));
    }

    #[test]
    fn lemma_cent_it_1_examples() {
        let h3 = corpus::algebra("h3").unwrap();
        assert!(check_lemma_cent_it_1(&h3, &h3.full(), 3).unwrap().passed);
        let sl2 = corpus::algebra("sl2").unwrap();
        let borel = span(&sl2, &[0, 1]);
        let r = check_lemma_cent_it_1(&sl2, &borel, 2).unwrap();
        assert!(r.passed);
        assert_eq!(r.cases, 3);
        assert_eq!(
            check_lemma_cent_it_1(&sl2, &span(&sl2, &[1, 2]), 2).unwrap_err(),
            Error::NotASubalgebra
        );
    }

    #[test]
    fn three_subgroups_examples() {
        let h3 = corpus::algebra("h3").unwrap();
        let full = h3.full();
        assert_eq!(
            check_three_subgroups(&h3, &full, &full, &full, &full).unwrap(),
            Verdict::Holds
        );
        let z = h3.zero_subspace();
        assert_eq!(check_three_subgroups(&h3, &z, &z, &z, &z).unwrap(), Verdict::Holds);
        let sl2 = corpus::algebra("sl2").unwrap();
        let e = span(&sl2, &[1]);
        assert_eq!(
            check_three_subgroups(&sl2, &e, &span(&sl2, &[2]), &e, &sl2.zero_subspace()).unwrap(),
            Verdict::NotApplicable
        );
    }
}
