//! Finite Lie rings against subset-level brute force.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lieforge::finring::{self, Caps, FiniteLieRing};
use lieforge::{corpus, sample, suite};

type Set = BTreeSet<usize>;

fn additive_closure(r: &FiniteLieRing, seed: &Set) -> Set {
    let mut s: Set = seed.clone();
    s.insert(0);
    loop {
        let mut grown = s.clone();
        for &a in &s {
            for &b in &s {
                grown.insert(r.add(a, b));
            }
        }
        if grown == s {
            return s;
        }
        s = grown;
    }
}

fn order(r: &FiniteLieRing) -> usize {
    r.order() as usize
}

/// Every subset closed under addition, found by scanning all `2^|R|` subsets.
fn all_subgroups(r: &FiniteLieRing) -> Vec<Set> {
    let n = order(r);
    (0u64..1 << n)
        .filter(|mask| mask & 1 == 1)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Set>())
        .filter(|s| s.iter().all(|&a| s.iter().all(|&b| s.contains(&r.add(a, b)))))
        .collect()
}

fn bracket_sets(r: &FiniteLieRing, a: &Set, b: &Set) -> Set {
    let mut out = Set::new();
    for &x in a {
        for &y in b {
            out.insert(r.bracket(x, y));
        }
    }
    additive_closure(r, &out)
}

fn is_ideal(r: &FiniteLieRing, s: &Set) -> bool {
    (0..order(r)).all(|x| s.iter().all(|&y| s.contains(&r.bracket(x, y))))
}

fn is_nilpotent(r: &FiniteLieRing, s: &Set) -> bool {
    let mut cur = s.clone();
    for _ in 0..=order(r) {
        if cur.len() == 1 {
            return true;
        }
        cur = bracket_sets(r, s, &cur);
    }
    false
}

fn as_set(g: &finring::Subgroup) -> Set {
    g.elements().collect()
}

fn shape(i: usize) -> &'static [u64] {
    [&[2u64, 2, 2][..], &[3, 3], &[4, 2], &[2, 4]][i % 4]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn subgroups_and_fitting_match_brute_force(seed in any::<u64>(), s in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = finring::random_ring("r", shape(s), &mut rng).unwrap();
        let brute = all_subgroups(&r);
        let ours: BTreeSet<Set> = r.subgroups().unwrap().iter().map(as_set).collect();
        prop_assert_eq!(ours.len(), brute.len());
        prop_assert_eq!(&ours, &brute.iter().cloned().collect::<BTreeSet<_>>());

        let mut f = Set::from([0]);
        for s in &brute {
            if is_ideal(&r, s) && is_nilpotent(&r, s) {
                f = additive_closure(&r, &f.union(s).copied().collect());
            }
        }
        let fitting = r.fitting_bruteforce().unwrap();
        prop_assert_eq!(as_set(&fitting), f);
        // maximality: no nilpotent ideal enlarges F
        for i in r.ideals().unwrap() {
            if r.nilpotency_class_of(&i).unwrap().is_some() {
                prop_assert_eq!(r.join(&fitting, &i), fitting.clone());
            }
        }
    }

    #[test]
    fn centralizer_lattice_matches_all_subsets(seed in any::<u64>(), s in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = finring::random_ring("r", shape(s), &mut rng).unwrap();
        let n = order(&r);
        let mut brute = BTreeSet::new();
        for mask in 0u64..1 << n {
            let c: Set = (0..n)
                .filter(|&y| (0..n).all(|x| mask >> x & 1 == 0 || r.bracket(x, y) == 0))
                .collect();
            brute.insert(c);
        }
        let lattice = r.centralizer_lattice().unwrap();
        let ours: BTreeSet<Set> = lattice.nodes.iter().map(as_set).collect();
        prop_assert_eq!(ours, brute);
        prop_assert!(lattice.max_chain >= 1 && lattice.max_chain <= r.composition_length() + 1);
        for &(a, b) in &lattice.edges {
            prop_assert!(lattice.nodes[b].is_subgroup_of(&lattice.nodes[a]) && a != b);
        }
    }

    #[test]
    fn scrambled_prime_algebras_agree_with_exhaustion(seed in any::<u64>(), idx in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let algebras = corpus::prime_algebras();
        let l = sample::scramble_basis(&algebras[idx % algebras.len()], &mut rng).unwrap();
        let report = suite::oracle_agreement(&l, Caps::default()).unwrap();
        prop_assert!(report.passed, "{:?}", report.violations);
    }
}

#[test]
fn bundled_ring_fitting_by_brute_force() {
    for r in corpus::rings().into_iter().filter(|r| r.order() <= 16) {
        let brute = all_subgroups(&r);
        let mut f = Set::from([0]);
        for s in &brute {
            if is_ideal(&r, s) && is_nilpotent(&r, s) {
                f = additive_closure(&r, &f.union(s).copied().collect());
            }
        }
        assert_eq!(as_set(&r.fitting_bruteforce().unwrap()), f, "{}", r.name());
    }
}
