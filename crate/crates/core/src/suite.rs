//! Named verification suites shared by the command-line tool and the test targets.
//!
//! Each suite returns plain [`CheckReport`]s so callers can serialize or tally them.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Element, LieAlgebra};
use crate::constructions::{self, Representation};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Subspace};
use crate::finring::{self, Caps, FiniteLieRing, Subgroup, SuiteConfig};
use crate::radicals::{self, BaerSampling};
use crate::report::{CheckReport, Verdict};
use crate::{sample, structure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Jacobi,
    Centralizers,
    LemmaCentIt,
    Radicals,
    Exp,
    Semidirect,
    Finring,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = [
        "jacobi",
        "centralizers",
        "lemma-cent-it",
        "radicals",
        "exp",
        "semidirect",
        "finring",
        "all",
    ];

    const ALL: [Suite; 7] = [
        Suite::Jacobi,
        Suite::Centralizers,
        Suite::LemmaCentIt,
        Suite::Radicals,
        Suite::Exp,
        Suite::Semidirect,
        Suite::Finring,
    ];

    /// The concrete suites this one stands for.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::ALL.to_vec(),
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::Centralizers => "centralizers",
            Suite::LemmaCentIt => "lemma-cent-it",
            Suite::Radicals => "radicals",
            Suite::Exp => "exp",
            Suite::Semidirect => "semidirect",
            Suite::Finring => "finring",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Options {
    pub seed: u64,
    /// Random subalgebras, subspaces or elements drawn per sampled check.
    pub samples: usize,
    /// Largest `j` in the iterated-centralizer lemmas.
    pub bound: usize,
    #[serde(skip)]
    pub caps: Caps,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            seed: 0,
            samples: 50,
            bound: 4,
            caps: Caps::default(),
        }
    }
}

/// Seed for one named input, so adding inputs does not perturb the others.
pub fn derive_seed(seed: u64, name: &str) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn rng_for(opts: &Options, name: &str, salt: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(opts.seed, &format!("{name}/{salt}")))
}

fn error_report(name: &str, e: &Error) -> CheckReport {
    let mut r = CheckReport::new(name);
    r.fail("error", e.to_string());
    r
}

/// Runs `suite` on an algebra. Failing computations become failed checks.
pub fn run_algebra(
    l: &LieAlgebra,
    reps: &[(String, Representation)],
    suite: Suite,
    opts: &Options,
) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for s in suite.expand() {
        let res = match s {
            Suite::Jacobi => Ok(vec![jacobi(l)]),
            Suite::Centralizers => centralizers(l, opts),
            Suite::LemmaCentIt => lemma_cent_it(l, opts),
            Suite::Radicals => radicals_suite(l, opts).map(|r| vec![r]),
            Suite::Exp => exp_suite(l, opts).map(|r| vec![r]),
            Suite::Semidirect => semidirect_suite(l, reps).map(|r| vec![r]),
            Suite::Finring => oracle_agreement(l, opts.caps).map(|r| vec![r]),
            Suite::All => unreachable!("expanded"),
        };
        match res {
            Ok(reports) => out.extend(reports),
            Err(e) => out.push(error_report(s.name(), &e)),
        }
    }
    out
}

/// Runs `suite` on a ring. Only `jacobi` and `finring` apply; the others are
/// recorded as not applicable.
pub fn run_ring(r: &FiniteLieRing, suite: Suite, opts: &Options) -> (Vec<CheckReport>, Option<finring::RingSuiteReport>) {
    let mut out = Vec::new();
    let mut detail = None;
    for s in suite.expand() {
        match s {
            Suite::Jacobi => out.push(ring_jacobi(r)),
            Suite::Finring => {
                let config = SuiteConfig {
                    seed: derive_seed(opts.seed, r.name()),
                    bound: opts.bound,
                    ..SuiteConfig::default()
                };
                match finring::verify_paper_suite(r, &config) {
                    Ok(rep) => {
                        out.extend(rep.checks.iter().cloned());
                        detail = Some(rep);
                    }
                    Err(e) => out.push(error_report("finring", &e)),
                }
            }
            other => {
                let mut c = CheckReport::new(other.name());
                c.not_applicable += 1;
                c.note("suite applies to algebras only");
                out.push(c);
            }
        }
    }
    (out, detail)
}

/// Alternation, antisymmetry and Jacobi on all basis triples, recomputed.
pub fn jacobi(l: &LieAlgebra) -> CheckReport {
    let mut rep = CheckReport::new("jacobi");
    let n = l.dim();
    let e: Vec<Element> = (0..n).map(|i| l.basis_element(i)).collect();
    let br = |x: &Element, y: &Element| l.bracket(x, y).expect("basis elements");
    for i in 0..n {
        rep.expect(br(&e[i], &e[i]).is_zero(), format!("[e{0},e{0}]", i + 1), "not zero");
        for j in i + 1..n {
            rep.expect(
                br(&e[i], &e[j]).add(&br(&e[j], &e[i])).is_zero(),
                format!("[e{},e{}]", i + 1, j + 1),
                "not antisymmetric",
            );
            for k in j + 1..n {
                let s = br(&e[i], &br(&e[j], &e[k]))
                    .add(&br(&e[j], &br(&e[k], &e[i])))
                    .add(&br(&e[k], &br(&e[i], &e[j])));
                rep.expect(
                    s.is_zero(),
                    format!("(e{},e{},e{})", i + 1, j + 1, k + 1),
                    format!("Jacobi sum is {s}"),
                );
            }
        }
    }
    rep
}

fn ring_jacobi(r: &FiniteLieRing) -> CheckReport {
    let mut rep = CheckReport::new("jacobi");
    let g: Vec<usize> = (0..r.rank()).map(|i| r.generator(i)).collect();
    for &a in &g {
        rep.expect(r.bracket(a, a) == 0, r.format_element(a), "[x,x] is not zero");
        for &b in &g {
            for &c in &g {
                let s = r.add(
                    r.add(r.bracket(a, r.bracket(b, c)), r.bracket(b, r.bracket(c, a))),
                    r.bracket(c, r.bracket(a, b)),
                );
                rep.expect(
                    s == 0,
                    format!("({},{},{})", r.format_element(a), r.format_element(b), r.format_element(c)),
                    format!("Jacobi sum is {}", r.format_element(s)),
                );
            }
        }
    }
    rep
}

/// Recursive iterated centralizers of each computed ideal against the kernel formula, `n ≤ dim`.
pub fn keystone(l: &LieAlgebra) -> Result<CheckReport> {
    let mut rep = CheckReport::new("iterated-centralizer-of-ideal");
    let zero = l.zero_subspace();
    for (idx, i) in sample::computed_ideals(l)?.iter().enumerate() {
        let terms = structure::iterated_centralizer_terms(l, i, &zero, l.dim())?;
        for (n, t) in terms.iter().enumerate() {
            let direct = structure::iterated_centralizer_of_ideal(l, i, n)?.space;
            rep.expect(
                &direct == t,
                format!("ideal #{idx} (dim {}) n={n}", i.dim()),
                format!("recursive term has dimension {}, kernel formula {}", t.dim(), direct.dim()),
            );
        }
    }
    Ok(rep)
}

/// Keystone, normalizer monotonicity, finite witnesses, triple centralizers and
/// the three-subgroup fact.
pub fn centralizers(l: &LieAlgebra, opts: &Options) -> Result<Vec<CheckReport>> {
    let mut rng = rng_for(opts, l.name(), "centralizers");
    let mut monotone = CheckReport::new("normalizer-monotone");
    let mut galois = CheckReport::new("triple-centralizer");
    let mut three = CheckReport::new("three-subgroups");
    for s in 0..opts.samples {
        let a = sample::random_subalgebra(l, &mut rng);
        let mut r = structure::check_normalizer_monotone(l, &a, l.dim())?;
        for v in &mut r.violations {
            v.case = format!("sample {s} {}", v.case);
        }
        monotone.merge(r);

        let x = sample::random_subspace(l, &mut rng, 3);
        let c1 = structure::centralizer_of(l, &x)?.space;
        let c2 = structure::centralizer_of(l, &c1)?.space;
        let c3 = structure::centralizer_of(l, &c2)?.space;
        galois.expect(
            c3 == c1 && x.is_subspace_of(&c2)?,
            format!("sample {s}"),
            "C(C(C(S))) differs from C(S)",
        );

        let y = sample::random_subspace(l, &mut rng, 2);
        let z = sample::random_subspace(l, &mut rng, 2);
        let h = l
            .bracket_subspaces(&l.bracket_subspaces(&x, &y)?, &z)?
            .sum(&l.bracket_subspaces(&l.bracket_subspaces(&y, &z)?, &x)?)?;
        three.record(format!("sample {s}"), &structure::check_three_subgroups(l, &x, &y, &z, &h)?);
    }
    Ok(vec![keystone(l)?, monotone, galois, three, center_witnesses(l)?])
}

/// Each quotient `Z_{i+1}/Z_i = Z(L/Z_i)` is the centralizer of at most `dim` elements.
pub fn center_witnesses(l: &LieAlgebra) -> Result<CheckReport> {
    let mut rep = CheckReport::new("finite-center-witness");
    let upper = structure::upper_central_series(l)?;
    for (i, z) in upper.terms.iter().enumerate() {
        let q = l.quotient(z)?;
        let w = structure::centralizer_finite_witness(&q.algebra, &q.algebra.full())?;
        let cut = structure::centralizer(&q.algebra, &w)?.space;
        rep.expect(
            cut == structure::center(&q.algebra)? && w.len() <= l.dim(),
            format!("Z_{i}"),
            format!("witness of length {} cuts out dimension {}", w.len(), cut.dim()),
        );
    }
    Ok(rep)
}

/// Both iterated-centralizer lemmas on seeded subalgebra samples.
pub fn lemma_cent_it(l: &LieAlgebra, opts: &Options) -> Result<Vec<CheckReport>> {
    Ok(vec![lemma_cent_it_1(l, opts)?, lemma_cent_it_2(l, opts)?])
}

pub fn lemma_cent_it_1(l: &LieAlgebra, opts: &Options) -> Result<CheckReport> {
    let mut rng = rng_for(opts, l.name(), "cent-it-1");
    let mut rep = CheckReport::new("lemma-cent-it-1");
    for s in 0..opts.samples {
        let h = sample::random_subalgebra(l, &mut rng);
        let mut r = structure::check_lemma_cent_it_1(l, &h, opts.bound)?;
        for v in &mut r.violations {
            v.case = format!("H sample {s} (dim {}) {}", h.dim(), v.case);
        }
        rep.merge(r);
    }
    Ok(rep)
}

/// Pairs `K ≤ H` where `K` is generated by a centralizer witness of `H`,
/// optionally enlarged, or by a single random element of `H`.
pub fn lemma_cent_it_2(l: &LieAlgebra, opts: &Options) -> Result<CheckReport> {
    let mut rng = rng_for(opts, l.name(), "cent-it-2");
    let mut rep = CheckReport::new("lemma-cent-it-2");
    let mut proper = 0;
    for s in 0..opts.samples {
        let h = sample::random_subalgebra(l, &mut rng);
        let k = match rng.gen_range(0..3) {
            0 => sample::random_subalgebra_of(l, &h, &mut rng),
            choice => {
                let mut gens = structure::centralizer_finite_witness(l, &h)?;
                if choice == 2 {
                    let h1 = l.bracket_subspaces(&h, &h)?;
                    gens.extend(structure::centralizer_finite_witness(l, &h1)?);
                }
                l.subalgebra_closure(&l.span(&gens)?)?.space
            }
        };
        for j in 1..=opts.bound {
            let v = structure::check_lemma_cent_it_2(l, &k, &h, j)?;
            if v == Verdict::Holds && k != h {
                proper += 1;
            }
            rep.record(format!("sample {s} dim K={} dim H={} j={j}", k.dim(), h.dim()), &v);
        }
    }
    rep.note(format!("{proper} premise-holding instances with K a proper subalgebra of H"));
    Ok(rep)
}

/// Fitting post-checks, maximality among computed ideals, Engel and Baer.
pub fn radicals_suite(l: &LieAlgebra, opts: &Options) -> Result<CheckReport> {
    let mut rep = CheckReport::new("radicals");
    if l.field() != Field::Rational {
        rep.not_applicable += 1;
        rep.note("trace-form Fitting ideal needs characteristic 0; the finring suite covers this algebra");
        return Ok(rep);
    }
    let f = match radicals::fitting_ideal(l) {
        Ok(f) => f.space,
        Err(e) => {
            rep.fail("fitting", e.to_string());
            return Ok(rep);
        }
    };
    let cert = radicals::fitting_nilpotent_certificate(l)?;
    rep.expect(cert.is_valid(), "fitting-certificate", "F is not certified as a nilpotent ideal");
    for (idx, i) in sample::computed_ideals(l)?.iter().enumerate() {
        if radicals::ideal_nilpotency_class(l, i)?.is_some() {
            rep.expect(
                i.is_subspace_of(&f)?,
                format!("ideal #{idx}"),
                "nilpotent ideal not contained in F",
            );
        }
    }
    let engel = radicals::engel_check(l)?;
    rep.expect(
        engel.equivalent,
        "engel",
        format!("F = L is {} but nilpotent is {}", engel.all_ad_nilpotent, engel.nilpotent),
    );
    let baer = radicals::baer_consistency(
        l,
        BaerSampling {
            seed: derive_seed(opts.seed, l.name()),
            random_elements: opts.samples,
        },
    )?;
    rep.expect(
        baer.inside_failures.is_empty(),
        "baer-inside",
        format!("{} basis vectors of F do not span subideals", baer.inside_failures.len()),
    );
    for x in &baer.outside_failures {
        rep.fail("baer-outside", format!("{x} lies outside F but spans a subideal"));
    }
    rep.cases += baer.outside_checked - baer.outside_failures.len();
    Ok(rep)
}

/// The ad-nilpotent elements an exp check runs over: basis vectors of `F`,
/// ad-nilpotent basis vectors of `L`, and random combinations inside `F`.
pub fn ad_nilpotent_elements(l: &LieAlgebra, rng: &mut impl Rng, extra: usize) -> Result<Vec<Element>> {
    let f = radicals::fitting_ideal(l)?.space;
    let mut out: Vec<Element> = f.basis_vectors().map(|v| Element(v.to_vec())).collect();
    for i in 0..l.dim() {
        let e = l.basis_element(i);
        if radicals::ad_nilpotency_index(l, &e)?.is_some() && !out.contains(&e) {
            out.push(e);
        }
    }
    if !f.is_zero() {
        let basis: Vec<Element> = f.basis_vectors().map(|v| Element(v.to_vec())).collect();
        for _ in 0..extra {
            let x = basis
                .iter()
                .fold(l.zero_element(), |acc, b| acc.add(&b.scale(&l.field().int(rng.gen_range(-2..=2)))));
            if !x.is_zero() {
                out.push(x);
            }
        }
    }
    Ok(out)
}

/// `exp(ad_x)` on ad-nilpotent elements: automorphism, inverse, Hartley,
/// normalization and conjugated centralizers.
pub fn exp_suite(l: &LieAlgebra, opts: &Options) -> Result<CheckReport> {
    let mut rep = CheckReport::new("exp");
    if l.field() != Field::Rational {
        rep.not_applicable += 1;
        rep.note("exp(ad x) needs characteristic 0");
        return Ok(rep);
    }
    let mut rng = rng_for(opts, l.name(), "exp");
    let elements = ad_nilpotent_elements(l, &mut rng, opts.samples / 10)?;
    let ideals = sample::computed_ideals(l)?;
    let subspaces: Vec<Subspace> = (0..opts.samples / 10).map(|_| sample::random_subspace(l, &mut rng, 2)).collect();
    let identity = constructions::InnerAutomorphism::identity(l).matrix;
    for x in &elements {
        let g = constructions::exp_ad(l, x)?;
        rep.expect(constructions::is_automorphism(l, &g.matrix)?, format!("exp({x})"), "not an automorphism");
        let back = g.compose(&constructions::exp_ad(l, &x.neg())?)?;
        rep.expect(back.matrix == identity, format!("exp({x})exp(-{x})"), "not the identity");
        let h = constructions::check_hartley(l, x)?;
        rep.expect(h.reconstructs, format!("hartley({x})"), format!("index {} does not reconstruct ad", h.index));
        for a in ideals.iter().chain(&subspaces) {
            let n = constructions::check_normalization_lemma(l, x, a)?;
            rep.expect(
                n.consistent(),
                format!("normalization x={x} dim A={}", a.dim()),
                format!("normalizes={} exp-stabilizes={}", n.normalizes, n.exp_stabilizes),
            );
        }
        for s in &subspaces {
            rep.record(format!("conjugate centralizer x={x}"), &constructions::check_conjugate_centralizer(l, s, &g)?);
        }
    }
    rep.note(format!("{} ad-nilpotent elements", elements.len()));
    Ok(rep)
}

/// `L ⋉ V` for the adjoint and every bundled representation: `V` is an abelian
/// ideal, `L` a complement subalgebra, and `(L ⋉ V)/V ≅ L`.
pub fn semidirect_suite(l: &LieAlgebra, reps: &[(String, Representation)]) -> Result<CheckReport> {
    let mut rep = CheckReport::new("semidirect");
    let mut all = vec![("adjoint".to_string(), Representation::adjoint(l.clone()))];
    all.extend(reps.iter().cloned());
    for (name, r) in &all {
        let a = constructions::semidirect_product(r)?;
        let (n, m) = (l.dim(), r.module_dim());
        let v = a.span(&(n..n + m).map(|i| a.basis_element(i)).collect::<Vec<_>>())?;
        let lpart = a.span(&(0..n).map(|i| a.basis_element(i)).collect::<Vec<_>>())?;
        rep.expect(jacobi(&a).passed, format!("{name}: jacobi"), "semidirect product fails Jacobi");
        rep.expect(
            a.is_ideal(&v)? && a.bracket_subspaces(&v, &v)?.is_zero(),
            format!("{name}: V"),
            "V is not an abelian ideal",
        );
        rep.expect(a.is_subalgebra(&lpart)?, format!("{name}: L"), "L is not a subalgebra");
        let q = a.quotient(&v)?;
        rep.expect(
            q.algebra.with_name(l.name()) == *l,
            format!("{name}: quotient"),
            "(L ⋉ V)/V differs from L",
        );
    }
    Ok(rep)
}

/// `[L,_m v] = 0` at `m = 1 + Σ(n_i − 1)` on seeded abelian actions with
/// `k ≤ 3` generators on modules of dimension `≤ 4`.
pub fn semidirect_bound_batch(seed: u64, count: usize) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, "semidirect-bound"));
    let mut rep = CheckReport::new("semidirect-bound");
    let mut nontrivial = 0;
    for c in 0..count {
        let k = 1 + c % 3;
        let m = 1 + (c / 3) % 4;
        let (r, v) = sample::random_nilpotent_action(&mut rng, k, m)?;
        let b = constructions::semidirect_bound_experiment(&r, &v, None)?;
        if b.bound > 1 {
            nontrivial += 1;
        }
        rep.expect(
            b.annihilates_at_bound && b.indices.iter().all(|&n| n <= 4),
            format!("construction {c} (k={k}, dim V={m})"),
            format!("indices {:?} bound {} minimal length {}", b.indices, b.bound, b.minimal_length),
        );
    }
    rep.note(format!("{nontrivial} constructions with bound above 1"));
    Ok(rep)
}

fn element_of(l: &LieAlgebra, r: &FiniteLieRing, x: usize) -> Element {
    let f = l.field();
    Element(r.coords(x).into_iter().map(|c| f.int(c as i64)).collect())
}

/// The subspace of `𝔽_p^n` underlying a subgroup of the matching ring.
pub fn subgroup_to_subspace(l: &LieAlgebra, r: &FiniteLieRing, s: &Subgroup) -> Result<Subspace> {
    let gens: Vec<Element> = r.generators(s).into_iter().map(|x| element_of(l, r, x)).collect();
    l.span(&gens)
}

/// Series, centralizers, iterated centralizers of ideals and the Fitting ideal
/// of an `𝔽_p` algebra against exhaustion of its additive group.
pub fn oracle_agreement(l: &LieAlgebra, caps: Caps) -> Result<CheckReport> {
    let mut rep = CheckReport::new("finring-oracle");
    if l.field() == Field::Rational {
        rep.not_applicable += 1;
        rep.note("only algebras over a prime field have a finite additive group");
        return Ok(rep);
    }
    let r = FiniteLieRing::from_prime_algebra(l)?.with_caps(caps);
    let conv = |s: &Subspace| finring::subspace_to_subgroup(&r, s);

    let pairs = [
        ("lower-central", structure::lower_central_series(l)?.terms, r.lower_central_series()?),
        ("derived", structure::derived_series(l)?.terms, r.derived_series()?),
        ("upper-central", structure::upper_central_series(l)?.terms, r.upper_central_series()?),
    ];
    for (name, ours, theirs) in pairs {
        let ours = ours.iter().map(conv).collect::<Result<Vec<_>>>()?;
        rep.expect(ours == theirs, name, format!("{} terms vs {} by exhaustion", ours.len(), theirs.len()));
    }

    let size = r.order() as usize;
    for x in 0..size {
        let ours = structure::centralizer(l, &[element_of(l, &r, x)])?.space;
        let theirs = r.centralizer_exhaustive(&[x])?;
        rep.expect(
            conv(&ours)? == theirs,
            format!("C({})", r.format_element(x)),
            format!("dimension {} vs order {}", ours.dim(), theirs.order()),
        );
    }
    rep.expect(conv(&structure::center(l)?)? == r.center()?, "center", "centers differ");

    let zero = l.zero_subspace();
    let ideals = sample::computed_ideals(l)?;
    for (idx, i) in ideals.iter().enumerate() {
        let gi = conv(i)?;
        rep.expect(r.is_ideal(&gi)?, format!("ideal #{idx}"), "not an ideal by exhaustion");
        let terms = structure::iterated_centralizer_terms(l, i, &zero, l.dim())?;
        for (n, t) in terms.iter().enumerate() {
            rep.expect(
                conv(t)? == r.iterated_centralizer_of_ideal(&gi, n)?,
                format!("ideal #{idx} C^{n}"),
                "iterated centralizer differs from exhaustion",
            );
        }
        rep.expect(
            conv(&structure::normalizer(l, i)?.space)? == r.normalizer(&gi)?,
            format!("ideal #{idx} normalizer"),
            "normalizers differ",
        );
    }

    let fitting = r.fitting_bruteforce()?;
    let fs = subgroup_to_subspace(l, &r, &fitting)?;
    rep.expect(
        l.is_ideal(&fs)? && radicals::ideal_nilpotency_class(l, &fs)?.is_some(),
        "fitting",
        "exhaustive Fitting ideal is not a nilpotent ideal of the algebra",
    );
    for (idx, i) in ideals.iter().enumerate() {
        if radicals::ideal_nilpotency_class(l, i)?.is_some() {
            rep.expect(
                i.is_subspace_of(&fs)?,
                format!("ideal #{idx} in F"),
                "nilpotent ideal outside the exhaustive Fitting ideal",
            );
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn suite_names_parse() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().name(), name);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!(Suite::All.expand().len(), 7);
    }

    #[test]
    fn h3_passes_everything() {
        let l = corpus::algebra("h3").unwrap();
        let opts = Options {
            samples: 10,
            ..Options::default()
        };
        for c in run_algebra(&l, &[], Suite::All, &opts) {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn prime_algebras_agree_with_exhaustion() {
        for l in corpus::prime_algebras() {
            let r = oracle_agreement(&l, Caps::default()).unwrap();
            assert!(r.passed, "{}: {:?}", l.name(), r.violations);
            assert!(r.cases > 0);
        }
    }

    #[test]
    fn rings_report_inapplicable_suites() {
        let r = corpus::ring("heis-z2").unwrap();
        let (checks, detail) = run_ring(&r, Suite::All, &Options::default());
        assert!(checks.iter().all(|c| c.passed));
        assert!(detail.unwrap().passed);
        assert!(checks.iter().any(|c| c.name == "radicals" && c.not_applicable == 1));
    }

    #[test]
    fn bound_batch_passes() {
        let r = semidirect_bound_batch(1, 24).unwrap();
        assert!(r.passed, "{:?}", r.violations);
        assert_eq!(r.cases, 24);
    }
}
