//! Ad-nilpotency, the associative envelope of `ad(L)`, the Fitting ideal in
//! characteristic 0, and the checks tying it to nilpotency and subideals.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Element, LieAlgebra, SubKind, SubStructure};
use crate::error::{Error, Result};
use crate::exactlin::{Echelon, Field, Matrix, Subspace};
use crate::sample;
use crate::structure;

fn require_char_zero(l: &LieAlgebra) -> Result<()> {
    match l.field() {
        Field::Rational => Ok(()),
        f => Err(Error::WrongCharacteristic(f.characteristic())),
    }
}

/// Least `k ≥ 1` with `ad_x^k = 0`, or `None` if `ad_x` is not nilpotent.
pub fn ad_nilpotency_index(l: &LieAlgebra, x: &Element) -> Result<Option<usize>> {
    let ad = l.ad(x)?;
    let mut power = ad.clone();
    for k in 1..=l.dim().max(1) {
        if power.is_zero() {
            return Ok(Some(k));
        }
        power = power.mul(&ad)?;
    }
    Ok(None)
}

/// The non-unital associative algebra of matrices generated by `ad_{e_1}, ..., ad_{e_n}`.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub size: usize,
    pub basis: Vec<Matrix>,
    #[serde(skip)]
    span: Subspace,
}

impl Envelope {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, m: &Matrix) -> Result<bool> {
        self.span.contains(m.entries())
    }
}

/// Span closure of the adjoint generators under multiplication.
///
/// Words of length `k+1` are generators times words of length `k`, so
/// multiplying the newly found basis vectors on the left by the generators
/// until nothing new appears yields the whole algebra.
pub fn associative_envelope(l: &LieAlgebra) -> Result<Envelope> {
    let n = l.dim();
    let f = l.field();
    let mut span = Echelon::new(f, n * n);
    let mut frontier = Vec::new();
    for a in l.ad_basis() {
        if span.insert(a.entries())? {
            frontier.push(a.clone());
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for g in l.ad_basis() {
                let p = g.mul(w)?;
                if span.insert(p.entries())? {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    let span = span.into_subspace();
    let basis = span
        .basis_vectors()
        .map(|v| Matrix::from_flat(f, n, n, v.to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Envelope {
        size: n,
        basis,
        span,
    })
}

/// `{x : tr(ad_x · b) = 0 for every b in the envelope}`.
///
/// In characteristic 0 the trace form cuts out the Jacobson radical of the
/// envelope, and `x` lies in the nilradical exactly when `ad_x` lies in it.
pub fn trace_radical(l: &LieAlgebra) -> Result<Subspace> {
    require_char_zero(l)?;
    let env = associative_envelope(l)?;
    let n = l.dim();
    let rows: Vec<_> = env
        .basis
        .iter()
        .map(|b| {
            l.ad_basis()
                .iter()
                .map(|a| a.mul(b).map(|p| p.trace()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Ok(l.full());
    }
    Ok(Matrix::from_rows(l.field(), n, rows)?.kernel())
}

/// The Fitting ideal (nilradical), post-verified to be a nilpotent ideal
/// whose quotient is reductive: the nilradical of `L/F` lies in its center.
///
/// `L/F` need not have zero nilradical (for `[t,y] = y` the quotient is a line),
/// but `[L, Rad L] ⊆ F` forces the nilradical of `L/F` to be central.
pub fn fitting_ideal(l: &LieAlgebra) -> Result<SubStructure> {
    let f = trace_radical(l)?;
    if !l.is_ideal(&f)? {
        return Err(Error::Internal("trace radical is not an ideal".into()));
    }
    let ideal = SubStructure {
        space: f,
        kind: SubKind::Ideal,
    };
    if ideal_nilpotency_class(l, &ideal.space)?.is_none() {
        return Err(Error::Internal("trace radical is not nilpotent".into()));
    }
    let q = l.quotient(&ideal.space)?;
    if !trace_radical(&q.algebra)?.is_subspace_of(&structure::center(&q.algebra)?)? {
        return Err(Error::Internal("quotient by the trace radical has a non-central nilradical".into()));
    }
    Ok(ideal)
}

/// Nilpotency class of a subalgebra `I` as a Lie algebra in its own right.
pub fn ideal_nilpotency_class(l: &LieAlgebra, i: &Subspace) -> Result<Option<usize>> {
    let mut cur = i.clone();
    for c in 0..=l.dim() {
        if cur.is_zero() {
            return Ok(Some(c));
        }
        let next = l.bracket_subspaces(i, &cur)?;
        if next == cur {
            return Ok(None);
        }
        cur = next;
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EngelVerdict {
    /// `F(L) = L`, i.e. every element is ad-nilpotent.
    pub all_ad_nilpotent: bool,
    /// The lower central series reaches 0.
    pub nilpotent: bool,
    pub class: Option<usize>,
    pub equivalent: bool,
}

pub fn engel_check(l: &LieAlgebra) -> Result<EngelVerdict> {
    let f = fitting_ideal(l)?;
    let all_ad_nilpotent = f.space.is_full();
    let class = structure::nilpotency_class(l)?;
    Ok(EngelVerdict {
        all_ad_nilpotent,
        nilpotent: class.is_some(),
        class,
        equivalent: all_ad_nilpotent == class.is_some(),
    })
}

/// Subideal test via the descending series `K_0 = L`, `K_{i+1}` = ideal of `K_i`
/// generated by `H`. Returns the chain `H = K_m ◁ ⋯ ◁ K_0 = L` when it reaches `H`.
pub fn is_subideal(l: &LieAlgebra, h: &Subspace) -> Result<Option<Vec<Subspace>>> {
    l.check_subspace(h)?;
    if !l.is_subalgebra(h)? {
        return Err(Error::NotASubalgebra);
    }
    let mut chain = vec![l.full()];
    for _ in 0..=l.dim() {
        let k = chain.last().expect("nonempty");
        if k == h {
            chain.reverse();
            return Ok(Some(chain));
        }
        let next = l.ideal_closure_within(k, h)?;
        if &next == k {
            return Ok(None);
        }
        chain.push(next);
    }
    Ok(None)
}

/// Re-verifies that each term of a chain is an ideal of the next.
pub fn verify_subideal_chain(l: &LieAlgebra, chain: &[Subspace]) -> Result<bool> {
    for pair in chain.windows(2) {
        if !l.is_subalgebra(&pair[1])? || !l.is_ideal_of(&pair[0], &pair[1])? {
            return Ok(false);
        }
    }
    Ok(chain.last().is_some_and(Subspace::is_full))
}

/// How many elements outside `F(L)` the Baer check samples.
#[derive(Clone, Copy, Debug)]
pub struct BaerSampling {
    pub seed: u64,
    pub random_elements: usize,
}

impl Default for BaerSampling {
    fn default() -> Self {
        BaerSampling {
            seed: 0,
            random_elements: 50,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BaerReport {
    pub fitting_dim: usize,
    /// Basis vectors of `F(L)` checked to span subideals.
    pub inside_checked: usize,
    pub inside_failures: Vec<Element>,
    /// Elements outside `F(L)` checked not to span subideals.
    pub outside_checked: usize,
    pub outside_failures: Vec<Element>,
    pub passed: bool,
}

/// `B(L) = F(L)`: elements of `F` span subideals, elements outside do not.
pub fn baer_consistency(l: &LieAlgebra, sampling: BaerSampling) -> Result<BaerReport> {
    let f = fitting_ideal(l)?.space;
    let mut inside_failures = Vec::new();
    let mut inside_checked = 0;
    for v in f.basis_vectors() {
        let x = Element(v.to_vec());
        inside_checked += 1;
        match is_subideal(l, &l.span(std::slice::from_ref(&x))?)? {
            Some(chain) if verify_subideal_chain(l, &chain)? => {}
            _ => inside_failures.push(x),
        }
    }
    let mut outside: Vec<Element> = (0..l.dim())
        .map(|i| l.basis_element(i))
        .filter(|e| !f.contains(e.coords()).unwrap_or(true))
        .collect();
    if !f.is_full() {
        let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
        let mut found = 0;
        let mut attempts = 0;
        while found < sampling.random_elements && attempts < sampling.random_elements * 20 {
            attempts += 1;
            let x = sample::random_element(l, &mut rng, 3);
            if !f.contains(x.coords())? {
                outside.push(x);
                found += 1;
            }
        }
    }
    let mut outside_failures = Vec::new();
    for x in &outside {
        if is_subideal(l, &l.span(std::slice::from_ref(x))?)?.is_some() {
            outside_failures.push(x.clone());
        }
    }
    let passed = inside_failures.is_empty() && outside_failures.is_empty();
    Ok(BaerReport {
        fitting_dim: f.dim(),
        inside_checked,
        inside_failures,
        outside_checked: outside.len(),
        outside_failures,
        passed,
    })
}

/// Machine-checkable summary that `F(L)` is a nilpotent ideal.
#[derive(Clone, Debug, Serialize)]
pub struct FittingCertificate {
    pub fitting: Subspace,
    pub is_ideal: bool,
    pub derived_length: Option<usize>,
    /// Ad-nilpotency index (in `L`) of each basis vector of `F`.
    pub basis_ad_indices: Vec<Option<usize>>,
    pub nilpotency_class: Option<usize>,
}

impl FittingCertificate {
    pub fn is_valid(&self) -> bool {
        self.is_ideal
            && self.derived_length.is_some()
            && self.basis_ad_indices.iter().all(Option::is_some)
            && self.nilpotency_class.is_some()
    }
}

pub fn fitting_nilpotent_certificate(l: &LieAlgebra) -> Result<FittingCertificate> {
    let f = fitting_ideal(l)?.space;
    let is_ideal = l.is_ideal(&f)?;
    let mut derived = f.clone();
    let mut derived_length = None;
    for k in 0..=l.dim() {
        if derived.is_zero() {
            derived_length = Some(k);
            break;
        }
        derived = l.bracket_subspaces(&derived, &derived)?;
    }
    let basis_ad_indices = f
        .basis_vectors()
        .map(|v| ad_nilpotency_index(l, &Element(v.to_vec())))
        .collect::<Result<Vec<_>>>()?;
    let nilpotency_class = ideal_nilpotency_class(l, &f)?;
    Ok(FittingCertificate {
        fitting: f,
        is_ideal,
        derived_length,
        basis_ad_indices,
        nilpotency_class,
    })
}

/// Everything the radicals module knows about one algebra.
#[derive(Clone, Debug, Serialize)]
pub struct RadicalReport {
    pub fitting: Subspace,
    pub fitting_class: Option<usize>,
    pub engel: EngelVerdict,
    pub baer_consistent: bool,
    pub baer: BaerReport,
    pub certificate: FittingCertificate,
}

pub fn radical_report(l: &LieAlgebra, sampling: BaerSampling) -> Result<RadicalReport> {
    let certificate = fitting_nilpotent_certificate(l)?;
    let engel = engel_check(l)?;
    let baer = baer_consistency(l, sampling)?;
    Ok(RadicalReport {
        fitting: certificate.fitting.clone(),
        fitting_class: certificate.nilpotency_class,
        engel,
        baer_consistent: baer.passed,
        baer,
        certificate,
    })
}
