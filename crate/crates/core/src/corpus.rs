//! Bundled example algebras and rings.

use crate::algebra::LieAlgebra;
use crate::constructions::Representation;
use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::finring::FiniteLieRing;
use crate::format::{self, Definition};

pub struct Entry {
    pub name: &'static str,
    pub text: &'static str,
}

macro_rules! entries {
    ($($name:literal),* $(,)?) => {
        &[$(Entry { name: $name, text: include_str!(concat!("../corpus/", $name, ".lie")) }),*]
    };
}

static ENTRIES: &[Entry] = entries![
    "abelian-3",
    "h3",
    "filiform-4",
    "aff1",
    "sl2",
    "borel-sl2",
    "h3-plus-q",
    "rot5",
    "h3-f2",
    "h3-f3",
    "sl2-f3",
    "filiform-4-f3",
    "heis-z2",
    "z4z2",
    "heis-z3",
];

pub fn entries() -> &'static [Entry] {
    ENTRIES
}

/// A bundled entry, or `abelian-N` for any `N`.
pub fn definition(name: &str) -> Result<Definition> {
    if let Some(entry) = ENTRIES.iter().find(|e| e.name == name) {
        return format::load(entry.text).map_err(|e| Error::Internal(format!("corpus entry {name}: {e}")));
    }
    if let Some(n) = name.strip_prefix("abelian-").and_then(|n| n.parse::<usize>().ok()) {
        return Ok(Definition::Algebra {
            algebra: LieAlgebra::abelian(Field::Rational, n).with_name(name),
            reps: Vec::new(),
        });
    }
    Err(Error::Precondition(format!("no corpus entry named '{name}'")))
}

pub fn algebra(name: &str) -> Result<LieAlgebra> {
    match definition(name)? {
        Definition::Algebra { algebra, .. } => Ok(algebra),
        Definition::Ring(_) => Err(Error::Precondition(format!("'{name}' is a ring"))),
    }
}

pub fn representations(name: &str) -> Result<Vec<(String, Representation)>> {
    match definition(name)? {
        Definition::Algebra { reps, .. } => Ok(reps),
        Definition::Ring(_) => Err(Error::Precondition(format!("'{name}' is a ring"))),
    }
}

pub fn ring(name: &str) -> Result<FiniteLieRing> {
    match definition(name)? {
        Definition::Ring(r) => Ok(r),
        Definition::Algebra { .. } => Err(Error::Precondition(format!("'{name}' is an algebra"))),
    }
}

/// Every bundled algebra, in listing order.
pub fn algebras() -> Vec<LieAlgebra> {
    ENTRIES.iter().filter_map(|e| algebra(e.name).ok()).collect()
}

pub fn rational_algebras() -> Vec<LieAlgebra> {
    algebras().into_iter().filter(|l| l.field() == Field::Rational).collect()
}

pub fn prime_algebras() -> Vec<LieAlgebra> {
    algebras().into_iter().filter(|l| l.field() != Field::Rational).collect()
}

pub fn rings() -> Vec<FiniteLieRing> {
    ENTRIES.iter().filter_map(|e| ring(e.name).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_loads_under_its_name() {
        for e in entries() {
            let d = definition(e.name).unwrap();
            assert_eq!(d.name(), e.name);
        }
        assert_eq!(algebras().len() + rings().len(), entries().len());
        assert_eq!(rings().len(), 3);
        assert_eq!(algebra("abelian-5").unwrap().dim(), 5);
        assert!(algebra("heis-z2").is_err());
        assert!(definition("nope").is_err());
        assert_eq!(representations("sl2").unwrap().len(), 1);
    }
}
