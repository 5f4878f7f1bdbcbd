//! JSON payloads for `analyze` and `check`.

use serde::Serialize;
use serde_json::{json, Value};

use lieforge::exactlin::{Field, Subspace};
use lieforge::finring::{Caps, FiniteLieRing, Subgroup};
use lieforge::format::Definition;
use lieforge::radicals::{self, BaerSampling};
use lieforge::report::CheckReport;
use lieforge::suite::{self, Options, Suite};
use lieforge::{structure, Element, LieAlgebra, Result};

#[derive(Clone, Copy, Debug)]
pub struct Sections {
    pub series: bool,
    pub centralizers: bool,
    pub radicals: bool,
}

#[derive(Serialize)]
struct Span {
    dim: usize,
    basis: Vec<String>,
}

fn span(s: &Subspace) -> Span {
    Span {
        dim: s.dim(),
        basis: s.basis_vectors().map(|v| Element(v.to_vec()).to_string()).collect(),
    }
}

#[derive(Serialize)]
struct Group {
    order: usize,
    generators: Vec<String>,
}

fn group(r: &FiniteLieRing, s: &Subgroup) -> Group {
    Group {
        order: s.order(),
        generators: r.generators(s).into_iter().map(|x| r.format_element(x)).collect(),
    }
}

fn series_json(terms: &[Subspace], stabilized: bool) -> Value {
    json!({
        "dims": terms.iter().map(Subspace::dim).collect::<Vec<_>>(),
        "stabilized": stabilized,
        "terms": terms.iter().map(span).collect::<Vec<_>>(),
    })
}

pub fn analyze(def: &Definition, sections: Sections, seed: u64, caps: Caps) -> Result<Value> {
    match def {
        Definition::Algebra { algebra, reps } => analyze_algebra(algebra, reps.len(), sections, seed, caps),
        Definition::Ring(r) => analyze_ring(r, sections),
    }
}

fn analyze_algebra(l: &LieAlgebra, reps: usize, sections: Sections, seed: u64, caps: Caps) -> Result<Value> {
    let mut out = serde_json::Map::new();
    out.insert("kind".into(), json!("algebra"));
    out.insert("name".into(), json!(l.name()));
    out.insert("field".into(), json!(l.field().to_string()));
    out.insert("dim".into(), json!(l.dim()));
    out.insert("representations".into(), json!(reps));
    if sections.series {
        let lower = structure::lower_central_series(l)?;
        let derived = structure::derived_series(l)?;
        let upper = structure::upper_central_series(l)?;
        out.insert(
            "series".into(),
            json!({
                "nilpotency_class": lower.first_zero(),
                "derived_length": derived.first_zero(),
                "lower_central": series_json(&lower.terms, lower.stabilized),
                "derived": series_json(&derived.terms, derived.stabilized),
                "upper_central": series_json(&upper.terms, upper.stabilized),
            }),
        );
    }
    if sections.centralizers {
        let mut per_basis = Vec::new();
        for i in 0..l.dim() {
            let e = l.basis_element(i);
            let c = structure::centralizer(l, std::slice::from_ref(&e))?;
            per_basis.push(json!({
                "element": e.to_string(),
                "centralizer": span(&c.space),
                "kind": c.kind,
            }));
        }
        let full = l.full();
        let witness = structure::centralizer_finite_witness(l, &full)?;
        let normalizers: Vec<Value> = structure::lower_central_series(l)?
            .terms
            .iter()
            .map(|t| Ok(json!({"of": span(t), "normalizer": span(&structure::normalizer(l, t)?.space)})))
            .collect::<Result<_>>()?;
        out.insert(
            "centralizers".into(),
            json!({
                "center": span(&structure::center(l)?),
                "center_witness": witness.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "basis": per_basis,
                "normalizers_of_lower_central_terms": normalizers,
            }),
        );
    }
    if sections.radicals {
        out.insert("radicals".into(), radicals_json(l, seed, caps)?);
    }
    Ok(Value::Object(out))
}

fn radicals_json(l: &LieAlgebra, seed: u64, caps: Caps) -> Result<Value> {
    if let Field::Prime(_) = l.field() {
        let r = FiniteLieRing::from_prime_algebra(l)?.with_caps(caps);
        let f = r.fitting_bruteforce()?;
        let fs = suite::subgroup_to_subspace(l, &r, &f)?;
        return Ok(json!({
            "method": "exhaustion of the additive group",
            "fitting": span(&fs),
            "fitting_class": radicals::ideal_nilpotency_class(l, &fs)?,
        }));
    }
    let report = radicals::radical_report(
        l,
        BaerSampling {
            seed,
            random_elements: 50,
        },
    )?;
    Ok(json!({
        "method": "trace radical of the associative envelope",
        "fitting": span(&report.fitting),
        "fitting_class": report.fitting_class,
        "engel": report.engel,
        "baer": {
            "consistent": report.baer.passed,
            "inside_checked": report.baer.inside_checked,
            "outside_checked": report.baer.outside_checked,
        },
    }))
}

fn analyze_ring(r: &FiniteLieRing, sections: Sections) -> Result<Value> {
    let mut out = serde_json::Map::new();
    out.insert("kind".into(), json!("ring"));
    out.insert("name".into(), json!(r.name()));
    out.insert("factors".into(), json!(r.factors()));
    out.insert("order".into(), json!(r.order()));
    let groups = |gs: Vec<Subgroup>| gs.iter().map(|g| group(r, g)).collect::<Vec<_>>();
    if sections.series {
        let lower = r.lower_central_series()?;
        let class = lower.iter().position(Subgroup::is_trivial);
        out.insert(
            "series".into(),
            json!({
                "nilpotency_class": class,
                "lower_central": groups(lower),
                "derived": groups(r.derived_series()?),
                "upper_central": groups(r.upper_central_series()?),
            }),
        );
    }
    if sections.centralizers {
        let per_gen: Vec<Value> = (0..r.rank())
            .map(|i| {
                let g = r.generator(i);
                Ok(json!({
                    "element": r.format_element(g),
                    "centralizer": group(r, &r.centralizer_exhaustive(&[g])?),
                }))
            })
            .collect::<Result<_>>()?;
        let lattice = r.centralizer_lattice()?;
        out.insert(
            "centralizers".into(),
            json!({
                "center": group(r, &r.center()?),
                "generators": per_gen,
                "lattice_nodes": lattice.nodes.len(),
                "lattice_max_chain": lattice.max_chain,
            }),
        );
    }
    if sections.radicals {
        let f = r.fitting_bruteforce()?;
        out.insert(
            "radicals".into(),
            json!({
                "method": "exhaustion over ideals",
                "fitting": group(r, &f),
                "fitting_class": r.nilpotency_class_of(&f)?,
            }),
        );
    }
    Ok(Value::Object(out))
}

/// One checked input.
#[derive(Serialize)]
pub struct CheckResult {
    pub name: String,
    pub kind: &'static str,
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digest: Option<String>,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Fails early when exhaustion would exceed the order cap.
pub fn preflight(def: &Definition, suite: Suite, caps: Caps) -> Result<()> {
    match def {
        Definition::Ring(r) => r.enumerate_elements().map(drop),
        Definition::Algebra { algebra, .. }
            if algebra.field() != Field::Rational && suite.expand().contains(&Suite::Finring) =>
        {
            FiniteLieRing::from_prime_algebra(algebra)?
                .with_caps(caps)
                .enumerate_elements()
                .map(drop)
        }
        Definition::Algebra { .. } => Ok(()),
    }
}

pub fn check(def: &Definition, suite: Suite, opts: &Options) -> (Vec<CheckReport>, Option<Value>) {
    match def {
        Definition::Algebra { algebra, reps } => (suite::run_algebra(algebra, reps, suite, opts), None),
        Definition::Ring(r) => {
            let (checks, detail) = suite::run_ring(r, suite, opts);
            let summary = detail.map(|d| {
                json!({
                    "order": d.order,
                    "subgroups": d.subgroups,
                    "subrings": d.subrings,
                    "ideals": d.ideals,
                    "sampled": d.sampled,
                    "fitting": d.fitting,
                    "fitting_class": d.fitting_class,
                    "centralizer_lattice_nodes": d.centralizer_lattice_nodes,
                    "centralizer_lattice_max_chain": d.centralizer_lattice_max_chain,
                    "center_witnesses": d.center_witnesses,
                    "notes": d.notes,
                })
            });
            (checks, summary)
        }
    }
}
