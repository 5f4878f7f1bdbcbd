//! Finite Lie rings on `ℤ/m_1 × ⋯ × ℤ/m_r`, handled by exhaustion.
//!
//! Elements are indices into the lexicographic enumeration of coordinate
//! tuples (first coordinate most significant). Subgroups are bitsets over
//! those indices.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_integer::Integer;
use rand::seq::index;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Subspace};
use crate::report::CheckReport;

/// Enumeration limits; `LIEFORGE_CAP` overrides them as `N` or `N,M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub order: u64,
    pub subgroups: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            order: 1 << 12,
            subgroups: 1 << 16,
        }
    }
}

impl Caps {
    pub const ENV: &'static str = "LIEFORGE_CAP";

    pub fn parse(text: &str) -> Result<Caps> {
        let bad = || Error::Precondition(format!("cannot parse cap {text:?}; expected N or N,M"));
        let mut caps = Caps::default();
        let mut parts = text.trim().split(',');
        let order = parts.next().ok_or_else(bad)?.trim();
        caps.order = order.parse().map_err(|_| bad())?;
        if let Some(sub) = parts.next() {
            caps.subgroups = sub.trim().parse().map_err(|_| bad())?;
        }
        if parts.next().is_some() || caps.order == 0 || caps.subgroups == 0 {
            return Err(bad());
        }
        Ok(caps)
    }

    /// Defaults when the variable is unset.
    pub fn from_env() -> Result<Caps> {
        match std::env::var(Caps::ENV) {
            Ok(v) => Caps::parse(&v),
            Err(_) => Ok(Caps::default()),
        }
    }
}

/// A set of ring elements closed under addition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    bits: Vec<u64>,
    order: usize,
}

impl Subgroup {
    fn empty(size: usize) -> Subgroup {
        Subgroup {
            bits: vec![0; size.div_ceil(64)],
            order: 0,
        }
    }

    fn insert(&mut self, x: usize) -> bool {
        let (w, b) = (x / 64, x % 64);
        if self.bits[w] >> b & 1 == 1 {
            return false;
        }
        self.bits[w] |= 1 << b;
        self.order += 1;
        true
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.get(x / 64).is_some_and(|w| w >> (x % 64) & 1 == 1)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let bits: Vec<u64> = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        let order = bits.iter().map(|w| w.count_ones() as usize).sum();
        Subgroup { bits, order }
    }

    /// Sorted element indices; orders subgroups deterministically.
    pub fn key(&self) -> Vec<usize> {
        self.elements().collect()
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order, self.key()).cmp(&(other.order, other.key()))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLieRing {
    name: String,
    factors: Vec<u64>,
    /// `table[i][j]` = coordinates of `[g_i, g_j]`.
    table: Vec<Vec<Vec<u64>>>,
    caps: Caps,
}

impl FiniteLieRing {
    /// Validates the table on generators: zero diagonal, antisymmetry,
    /// orders compatible with bi-additivity, Jacobi on all triples.
    ///
    /// Zero diagonal plus antisymmetry gives `[x, x] = 0` for every `x`:
    /// expanding `[Σ a_i g_i, Σ a_i g_i]` leaves only `a_i a_j ([g_i,g_j] + [g_j,g_i])`.
    pub fn new(name: impl Into<String>, factors: Vec<u64>, table: Vec<Vec<Vec<u64>>>) -> Result<FiniteLieRing> {
        let r = factors.len();
        if factors.iter().any(|&m| m < 2) {
            return Err(Error::InvalidRing("invariant factors must be at least 2".into()));
        }
        if table.len() != r || table.iter().any(|row| row.len() != r || row.iter().any(|e| e.len() != r)) {
            return Err(Error::InvalidRing(format!("bracket table must be {r} x {r} with {r} coordinates per entry")));
        }
        let table: Vec<Vec<Vec<u64>>> = table
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| e.iter().zip(&factors).map(|(c, m)| c % m).collect())
                    .collect()
            })
            .collect();
        let ring = FiniteLieRing {
            name: name.into(),
            factors,
            table,
            caps: Caps::default(),
        };
        for i in 0..r {
            if ring.table[i][i].iter().any(|&c| c != 0) {
                return Err(Error::NotAlternating(i));
            }
            for j in 0..r {
                if ring.add_coords(&ring.table[i][j], &ring.table[j][i]).iter().any(|&c| c != 0) {
                    return Err(Error::NotAntisymmetric(i.min(j), i.max(j)));
                }
                let g = ring.factors[i].gcd(&ring.factors[j]);
                if ring.scale_coords(&ring.table[i][j], g).iter().any(|&c| c != 0) {
                    return Err(Error::InvalidRing(format!(
                        "order of [g{},g{}] does not divide gcd({}, {}) = {g}",
                        i + 1,
                        j + 1,
                        ring.factors[i],
                        ring.factors[j]
                    )));
                }
            }
        }
        for i in 0..r {
            for j in i + 1..r {
                for k in j + 1..r {
                    let unit = |t| ring.unit(t);
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    let t1 = ring.bracket_coords(&x, &ring.bracket_coords(&y, &z));
                    let t2 = ring.bracket_coords(&z, &ring.bracket_coords(&x, &y));
                    let t3 = ring.bracket_coords(&y, &ring.bracket_coords(&z, &x));
                    let sum = ring.add_coords(&ring.add_coords(&t1, &t2), &t3);
                    if sum.iter().any(|&c| c != 0) {
                        return Err(Error::JacobiFails(i, j, k));
                    }
                }
            }
        }
        Ok(ring)
    }

    /// `[g_i, g_j] = Σ c g_k` given as 0-based `(i, j, [(c, k)])`, antisymmetric fill.
    pub fn from_brackets(
        name: impl Into<String>,
        factors: Vec<u64>,
        brackets: &[(usize, usize, Vec<(i64, usize)>)],
    ) -> Result<FiniteLieRing> {
        let r = factors.len();
        let mut table = vec![vec![vec![0u64; r]; r]; r];
        for (i, j, terms) in brackets {
            if *i >= r || *j >= r || terms.iter().any(|&(_, k)| k >= r) {
                return Err(Error::InvalidRing("generator index out of range".into()));
            }
            for &(c, k) in terms {
                let m = factors[k] as i64;
                let c = c.rem_euclid(m) as u64;
                table[*i][*j][k] = (table[*i][*j][k] + c) % factors[k];
                table[*j][*i][k] = (table[*j][*i][k] + factors[k] - c) % factors[k];
            }
        }
        FiniteLieRing::new(name, factors, table)
    }

    /// The additive group of an `𝔽_p` algebra with its structure constants.
    pub fn from_prime_algebra(l: &LieAlgebra) -> Result<FiniteLieRing> {
        let p = match l.field() {
            Field::Prime(p) => p,
            Field::Rational => return Err(Error::WrongCharacteristic(0)),
        };
        let n = l.dim();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| l.c(i, j).iter().map(prime_residue).collect())
                    .collect()
            })
            .collect();
        FiniteLieRing::new(l.name(), vec![p; n], table)
    }

    pub fn abelian(name: impl Into<String>, factors: Vec<u64>) -> Result<FiniteLieRing> {
        let r = factors.len();
        FiniteLieRing::new(name, factors, vec![vec![vec![0; r]; r]; r])
    }

    pub fn with_caps(mut self, caps: Caps) -> FiniteLieRing {
        self.caps = caps;
        self
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn table(&self) -> &[Vec<Vec<u64>>] {
        &self.table
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&m| m as u128).product()
    }

    /// Number of prime factors of the order, with multiplicity.
    pub fn composition_length(&self) -> usize {
        self.factors
            .iter()
            .map(|&m| {
                let (mut m, mut count, mut p) = (m, 0, 2);
                while m > 1 {
                    while m % p == 0 {
                        m /= p;
                        count += 1;
                    }
                    p += 1;
                }
                count
            })
            .sum()
    }

    fn size(&self) -> Result<usize> {
        let order = self.order();
        if order > self.caps.order as u128 {
            return Err(Error::OrderCapExceeded {
                order,
                cap: self.caps.order,
            });
        }
        Ok(order as usize)
    }

    fn unit(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    fn add_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((x, y), m)| (x + y) % m)
            .collect()
    }

    fn scale_coords(&self, a: &[u64], s: u64) -> Vec<u64> {
        a.iter()
            .zip(&self.factors)
            .map(|(x, m)| ((*x as u128 * s as u128) % *m as u128) as u64)
            .collect()
    }

    fn bracket_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.rank()];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 || i == j {
                    continue;
                }
                let s = ai as u128 * bj as u128;
                for (k, m) in self.factors.iter().enumerate() {
                    let t = self.table[i][j][k];
                    if t != 0 {
                        out[k] = ((out[k] as u128 + s % *m as u128 * t as u128) % *m as u128) as u64;
                    }
                }
            }
        }
        out
    }

    pub fn coords(&self, x: usize) -> Vec<u64> {
        let mut out = vec![0; self.rank()];
        let mut x = x as u64;
        for (slot, m) in out.iter_mut().zip(&self.factors).rev() {
            *slot = x % m;
            x /= m;
        }
        out
    }

    pub fn index_of(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0u64, |acc, (c, m)| acc * m + c % m) as usize
    }

    pub fn generator(&self, i: usize) -> usize {
        self.index_of(&self.unit(i))
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.add_coords(&self.coords(a), &self.coords(b)))
    }

    pub fn neg(&self, a: usize) -> usize {
        let c: Vec<u64> = self.coords(a).iter().zip(&self.factors).map(|(x, m)| (m - x) % m).collect();
        self.index_of(&c)
    }

    pub fn bracket(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.bracket_coords(&self.coords(a), &self.coords(b)))
    }

    /// All elements in lexicographic order of their coordinates.
    pub fn enumerate_elements(&self) -> Result<impl Iterator<Item = Vec<u64>> + '_> {
        let size = self.size()?;
        Ok((0..size).map(|x| self.coords(x)))
    }

    pub fn format_element(&self, x: usize) -> String {
        let terms: Vec<String> = self
            .coords(x)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| if c == 1 { format!("g{}", i + 1) } else { format!("{c}g{}", i + 1) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// `<g_a, ...>` with a minimal-by-greedy generating set, plus the order.
    pub fn describe(&self, s: &Subgroup) -> String {
        let gens: Vec<String> = self.generators(s).into_iter().map(|g| self.format_element(g)).collect();
        format!("<{}> (order {})", gens.join(", "), s.order())
    }

    pub fn trivial(&self) -> Result<Subgroup> {
        let mut s = Subgroup::empty(self.size()?);
        s.insert(0);
        Ok(s)
    }

    pub fn whole(&self) -> Result<Subgroup> {
        let size = self.size()?;
        let mut s = Subgroup::empty(size);
        for x in 0..size {
            s.insert(x);
        }
        Ok(s)
    }

    /// Closure of `s` under adding `g`: `s + <g>`.
    fn adjoin(&self, s: &mut Subgroup, g: usize) {
        let mut list: Vec<usize> = s.elements().collect();
        let mut i = 0;
        while i < list.len() {
            let y = self.add(list[i], g);
            if s.insert(y) {
                list.push(y);
            }
            i += 1;
        }
    }

    pub fn generated(&self, xs: &[usize]) -> Result<Subgroup> {
        let mut s = self.trivial()?;
        for &x in xs {
            if !s.contains(x) {
                self.adjoin(&mut s, x);
            }
        }
        Ok(s)
    }

    /// Elements in index order that are not in the span of those before.
    pub fn generators(&self, s: &Subgroup) -> Vec<usize> {
        let mut span = Subgroup::empty(s.bits.len() * 64);
        span.insert(0);
        let mut gens = Vec::new();
        for x in s.elements() {
            if !span.contains(x) {
                self.adjoin(&mut span, x);
                gens.push(x);
            }
        }
        gens
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut s = a.clone();
        for g in self.generators(b) {
            if !s.contains(g) {
                self.adjoin(&mut s, g);
            }
        }
        s
    }

    /// `[A, B]`; by bi-additivity generated by brackets of generators.
    pub fn bracket_subgroups(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        let gb = self.generators(b);
        let mut out = Vec::new();
        for x in self.generators(a) {
            for &y in &gb {
                out.push(self.bracket(x, y));
            }
        }
        self.generated(&out)
    }

    /// `{x : [x, a] ∈ T for all a ∈ A}`.
    pub fn bracket_preimage(&self, a: &Subgroup, t: &Subgroup) -> Result<Subgroup> {
        let ga = self.generators(a);
        let size = self.size()?;
        let mut out = Subgroup::empty(size);
        for x in 0..size {
            if ga.iter().all(|&g| t.contains(self.bracket(x, g))) {
                out.insert(x);
            }
        }
        Ok(out)
    }

    /// `C_L(X)`, scanning every element of the ring.
    pub fn centralizer_exhaustive(&self, xs: &[usize]) -> Result<Subgroup> {
        let size = self.size()?;
        let mut out = Subgroup::empty(size);
        for y in 0..size {
            if xs.iter().all(|&x| self.bracket(y, x) == 0) {
                out.insert(y);
            }
        }
        Ok(out)
    }

    pub fn centralizer_of(&self, s: &Subgroup) -> Result<Subgroup> {
        self.centralizer_exhaustive(&self.generators(s))
    }

    pub fn center(&self) -> Result<Subgroup> {
        self.centralizer_of(&self.whole()?)
    }

    pub fn normalizer(&self, a: &Subgroup) -> Result<Subgroup> {
        self.bracket_preimage(a, a)
    }

    pub fn is_subring(&self, s: &Subgroup) -> Result<bool> {
        Ok(self.bracket_subgroups(s, s)?.is_subgroup_of(s))
    }

    pub fn is_ideal(&self, s: &Subgroup) -> Result<bool> {
        Ok(self.bracket_subgroups(&self.whole()?, s)?.is_subgroup_of(s))
    }

    pub fn is_ideal_of(&self, i: &Subgroup, a: &Subgroup) -> Result<bool> {
        Ok(i.is_subgroup_of(a) && self.bracket_subgroups(a, i)?.is_subgroup_of(i))
    }

    /// `H^0 = H`, `H^{i+1} = [H, H^i]`, `count` terms.
    pub fn lower_central(&self, h: &Subgroup, count: usize) -> Result<Vec<Subgroup>> {
        let mut out = vec![h.clone()];
        while out.len() < count {
            let next = self.bracket_subgroups(h, out.last().expect("nonempty"))?;
            out.push(next);
        }
        Ok(out)
    }

    /// Least `c` with `H^c = 0`, or `None` if the series stalls above 0.
    pub fn nilpotency_class_of(&self, h: &Subgroup) -> Result<Option<usize>> {
        let mut cur = h.clone();
        let mut c = 0;
        loop {
            if cur.is_trivial() {
                return Ok(Some(c));
            }
            let next = self.bracket_subgroups(h, &cur)?;
            if next == cur {
                return Ok(None);
            }
            cur = next;
            c += 1;
        }
    }

    /// Series stopping at the first repeated term.
    fn series(&self, start: Subgroup, mut step: impl FnMut(&Subgroup) -> Result<Subgroup>) -> Result<Vec<Subgroup>> {
        let mut terms = vec![start];
        loop {
            let next = step(terms.last().expect("nonempty"))?;
            if &next == terms.last().expect("nonempty") {
                return Ok(terms);
            }
            terms.push(next);
        }
    }

    pub fn lower_central_series(&self) -> Result<Vec<Subgroup>> {
        let whole = self.whole()?;
        self.series(whole.clone(), |t| self.bracket_subgroups(&whole, t))
    }

    pub fn derived_series(&self) -> Result<Vec<Subgroup>> {
        self.series(self.whole()?, |t| self.bracket_subgroups(t, t))
    }

    /// `Z_0 = 0`, `Z_{i+1} = {x : [x, L] ⊆ Z_i}`.
    pub fn upper_central_series(&self) -> Result<Vec<Subgroup>> {
        let whole = self.whole()?;
        self.series(self.trivial()?, |z| self.bracket_preimage(&whole, z))
    }

    /// `C^0..C^n` of `A/H` by the recursive definition.
    pub fn iterated_centralizer_terms(&self, a: &Subgroup, h: &Subgroup, n: usize) -> Result<Vec<Subgroup>> {
        if !self.is_subring(a)? {
            return Err(Error::Precondition("A must be a subring".into()));
        }
        if !self.is_ideal_of(h, a)? {
            return Err(Error::Precondition("H must be an ideal of A".into()));
        }
        let mut terms = vec![h.clone()];
        let mut normalizers: Vec<Subgroup> = Vec::new();
        for k in 0..n {
            let mut next = self.bracket_preimage(a, &terms[k])?;
            for nz in &normalizers {
                next = next.intersect(nz);
            }
            normalizers.push(self.normalizer(&next)?);
            terms.push(next);
        }
        Ok(terms)
    }

    /// `{x : [I,_n x] = 0}`: the subgroup `[I,_k x]` is pushed forward one
    /// bracket at a time and must vanish after `n` steps.
    pub fn iterated_centralizer_of_ideal(&self, i: &Subgroup, n: usize) -> Result<Subgroup> {
        if !self.is_ideal(i)? {
            return Err(Error::NotAnIdeal);
        }
        let size = self.size()?;
        let mut out = Subgroup::empty(size);
        for x in 0..size {
            let mut frontier = self.generated(&[x])?;
            for _ in 0..n {
                if frontier.is_trivial() {
                    break;
                }
                frontier = self.bracket_subgroups(i, &frontier)?;
            }
            if frontier.is_trivial() {
                out.insert(x);
            }
        }
        Ok(out)
    }

    /// Every subgroup, as joins of cyclic subgroups, sorted by `(order, key)`.
    pub fn subgroups(&self) -> Result<Vec<Subgroup>> {
        let size = self.size()?;
        let mut cyclic: Vec<Subgroup> = Vec::new();
        let mut seen_cyclic = HashSet::new();
        for x in 0..size {
            let c = self.generated(&[x])?;
            if seen_cyclic.insert(c.clone()) {
                cyclic.push(c);
            }
        }
        let cap = self.caps.subgroups;
        let mut seen: HashSet<Subgroup> = HashSet::new();
        let mut queue = vec![self.trivial()?];
        seen.insert(queue[0].clone());
        let mut head = 0;
        while head < queue.len() {
            let s = queue[head].clone();
            head += 1;
            for c in &cyclic {
                if c.is_subgroup_of(&s) {
                    continue;
                }
                let j = self.join(&s, c);
                if seen.insert(j.clone()) {
                    if seen.len() > cap {
                        return Err(Error::SubgroupCapExceeded(cap));
                    }
                    queue.push(j);
                }
            }
        }
        queue.sort();
        Ok(queue)
    }

    pub fn subrings(&self) -> Result<Vec<Subgroup>> {
        let mut out = Vec::new();
        for s in self.subgroups()? {
            if self.is_subring(&s)? {
                out.push(s);
            }
        }
        Ok(out)
    }

    pub fn ideals(&self) -> Result<Vec<Subgroup>> {
        let mut out = Vec::new();
        for s in self.subgroups()? {
            if self.is_ideal(&s)? {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// All distinct `C(X)`: single-element centralizers closed under intersection.
    pub fn centralizer_lattice(&self) -> Result<CentralizerLattice> {
        let size = self.size()?;
        let mut nodes: Vec<Subgroup> = Vec::new();
        let mut seen = HashSet::new();
        for x in 0..size {
            let c = self.centralizer_exhaustive(&[x])?;
            if seen.insert(c.clone()) {
                nodes.push(c);
            }
        }
        let mut i = 0;
        while i < nodes.len() {
            for j in 0..i {
                let m = nodes[i].intersect(&nodes[j]);
                if seen.insert(m.clone()) {
                    nodes.push(m);
                }
            }
            i += 1;
        }
        // descending by order, then key
        nodes.sort_by(|a, b| b.cmp(a));
        let n = nodes.len();
        let below = |a: usize, b: usize| a != b && nodes[a].is_subgroup_of(&nodes[b]);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if below(b, a) && !(0..n).any(|c| below(b, c) && below(c, a)) {
                    edges.push((a, b));
                }
            }
        }
        // longest chain by nodes; indices are sorted by decreasing order so parents come first
        let mut longest = vec![1usize; n];
        for b in 0..n {
            for a in 0..b {
                if below(b, a) {
                    longest[b] = longest[b].max(longest[a] + 1);
                }
            }
        }
        Ok(CentralizerLattice {
            max_chain: longest.into_iter().max().unwrap_or(0),
            nodes,
            edges,
        })
    }

    /// Sum of all nilpotent ideals, found by enumerating every subgroup.
    pub fn fitting_bruteforce(&self) -> Result<Subgroup> {
        let mut nilpotent = Vec::new();
        for s in self.ideals()? {
            if self.nilpotency_class_of(&s)?.is_some() {
                nilpotent.push(s);
            }
        }
        let mut f = self.trivial()?;
        for s in &nilpotent {
            f = self.join(&f, s);
        }
        if !self.is_ideal(&f)? || self.nilpotency_class_of(&f)?.is_none() {
            return Err(Error::Internal("sum of nilpotent ideals is not a nilpotent ideal".into()));
        }
        Ok(f)
    }

    /// A tuple `x̄` of generators of the ring with `{y : [y, x̄] ⊆ Z_i} = Z_{i+1}`,
    /// chosen greedily by largest shrinkage, lowest index on ties.
    pub fn quotient_center_witness(&self, z: &Subgroup) -> Result<Vec<usize>> {
        let whole = self.whole()?;
        let target = self.bracket_preimage(&whole, z)?;
        let candidates: Vec<(usize, Subgroup)> = (0..self.rank())
            .map(|i| {
                let g = self.generator(i);
                self.bracket_preimage(&self.generated(&[g])?, z).map(|c| (g, c))
            })
            .collect::<Result<_>>()?;
        let mut current = whole;
        let mut witness = Vec::new();
        while current != target {
            let mut best: Option<(usize, Subgroup)> = None;
            for (idx, (_, c)) in candidates.iter().enumerate() {
                let next = current.intersect(c);
                if next.order() < current.order() && best.as_ref().is_none_or(|(_, b)| next.order() < b.order()) {
                    best = Some((idx, next));
                }
            }
            let (idx, next) = best.ok_or_else(|| Error::Internal("witness search stalled".into()))?;
            witness.push(candidates[idx].0);
            current = next;
        }
        Ok(witness)
    }
}

fn prime_residue(s: &crate::exactlin::Scalar) -> u64 {
    s.residue().expect("prime-field scalar")
}

impl fmt::Display for FiniteLieRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self.factors.iter().map(u64::to_string).collect();
        write!(f, "{} on Z/{}", self.name, factors.join(" x Z/"))
    }
}

/// Lattice of centralizers, largest first; `edges` are Hasse cover pairs `(upper, lower)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerLattice {
    pub nodes: Vec<Subgroup>,
    pub edges: Vec<(usize, usize)>,
    /// Number of nodes in a longest chain.
    pub max_chain: usize,
}

/// Subgroups of `ℤ/m_1 × ⋯` converted from a subspace of `𝔽_p^n`.
pub fn subspace_to_subgroup(r: &FiniteLieRing, s: &Subspace) -> Result<Subgroup> {
    let gens: Vec<usize> = s
        .basis_vectors()
        .map(|v| r.index_of(&v.iter().map(prime_residue).collect::<Vec<_>>()))
        .collect();
    r.generated(&gens)
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Subrings are sampled when there are more than this many.
    pub subring_limit: usize,
    /// Pairs `K ≤ H` are sampled beyond this many.
    pub pair_limit: usize,
    pub triple_samples: usize,
    /// Largest `j` in the iterated-centralizer lemmas.
    pub bound: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            seed: 0,
            subring_limit: 1 << 10,
            pair_limit: 1 << 12,
            triple_samples: 64,
            bound: 4,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RingSuiteReport {
    pub ring: String,
    pub order: u128,
    pub subgroups: usize,
    pub subrings: usize,
    pub ideals: usize,
    pub sampled: bool,
    pub fitting: String,
    pub fitting_class: Option<usize>,
    pub centralizer_lattice_nodes: usize,
    pub centralizer_lattice_max_chain: usize,
    /// One tuple per term `Z_i` of the upper central series.
    pub center_witnesses: Vec<Vec<String>>,
    pub checks: Vec<CheckReport>,
    pub passed: bool,
    pub notes: Vec<String>,
}

fn sample<T: Clone>(items: &[T], limit: usize, rng: &mut ChaCha8Rng) -> (Vec<T>, bool) {
    if items.len() <= limit {
        return (items.to_vec(), false);
    }
    let mut idx = index::sample(rng, items.len(), limit).into_vec();
    idx.sort_unstable();
    (idx.into_iter().map(|i| items[i].clone()).collect(), true)
}

/// Runs every iterated-centralizer statement, the three-subgroup fact, the
/// finite-witness property of iterated centers and the Fitting theorem on `r`.
pub fn verify_paper_suite(r: &FiniteLieRing, config: &SuiteConfig) -> Result<RingSuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let whole = r.whole()?;
    let zero = r.trivial()?;
    let subgroups = r.subgroups()?;
    let mut subrings = Vec::new();
    let mut ideals = Vec::new();
    for s in &subgroups {
        if r.is_subring(s)? {
            subrings.push(s.clone());
            if r.is_ideal(s)? {
                ideals.push(s.clone());
            }
        }
    }
    let (subring_sample, mut sampled) = sample(&subrings, config.subring_limit, &mut rng);
    let bound = config.bound;
    let mut checks = Vec::new();

    let depth = r.composition_length() + 1;
    let mut keystone = CheckReport::new("iterated-centralizer-of-ideal");
    for i in &ideals {
        let terms = r.iterated_centralizer_terms(i, &zero, depth)?;
        for (n, t) in terms.iter().enumerate() {
            let direct = r.iterated_centralizer_of_ideal(i, n)?;
            keystone.expect(
                &direct == t && r.is_ideal(t)?,
                format!("I={} n={n}", r.describe(i)),
                format!("recursive {} vs kernel {}", r.describe(t), r.describe(&direct)),
            );
        }
    }
    checks.push(keystone);

    let mut monotone = CheckReport::new("normalizer-monotone");
    let mut cent1 = CheckReport::new("lemma-cent-it-1");
    for h in &subring_sample {
        let na = r.normalizer(h)?;
        let cents = r.iterated_centralizer_terms(h, &zero, bound)?;
        let powers = r.lower_central(h, bound + 1)?;
        for (n, c) in cents.iter().enumerate().skip(1) {
            monotone.expect(
                na.is_subgroup_of(&r.normalizer(c)?),
                format!("A={} n={n}", r.describe(h)),
                "N(A) is not contained in N(C^n(A))",
            );
        }
        for j in 1..=bound {
            for i in 0..j {
                let lhs = r.bracket_subgroups(&powers[i], &cents[j])?;
                cent1.expect(
                    lhs.is_subgroup_of(&cents[j - i - 1]),
                    format!("H={} i={i} j={j}", r.describe(h)),
                    format!("[H^i, C^j(H)] = {} escapes C^{}(H)", r.describe(&lhs), j - i - 1),
                );
            }
        }
    }
    checks.push(monotone);
    checks.push(cent1);

    let mut pairs = Vec::new();
    for k in &subring_sample {
        for h in &subring_sample {
            if k.is_subgroup_of(h) {
                pairs.push((k.clone(), h.clone()));
            }
        }
    }
    let (pairs, pairs_sampled) = sample(&pairs, config.pair_limit, &mut rng);
    sampled |= pairs_sampled;
    let mut cent2 = CheckReport::new("lemma-cent-it-2");
    for (k, h) in &pairs {
        let kp = r.lower_central(k, bound)?;
        let hp = r.lower_central(h, bound)?;
        let ck = r.iterated_centralizer_terms(k, &zero, bound)?;
        let ch = r.iterated_centralizer_terms(h, &zero, bound)?;
        for j in 1..=bound {
            let mut premise = true;
            for i in 0..j {
                if r.centralizer_of(&kp[i])? != r.centralizer_of(&hp[i])? {
                    premise = false;
                    break;
                }
            }
            if !premise {
                cent2.not_applicable += 1;
                continue;
            }
            cent2.expect(
                ck[j] == ch[j],
                format!("K={} H={} j={j}", r.describe(k), r.describe(h)),
                format!("C^j(K) = {} but C^j(H) = {}", r.describe(&ck[j]), r.describe(&ch[j])),
            );
        }
    }
    checks.push(cent2);

    let mut three = CheckReport::new("three-subgroups");
    for _ in 0..config.triple_samples {
        let pick = |rng: &mut ChaCha8Rng| subgroups[rng.gen_range(0..subgroups.len())].clone();
        let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let xyz = r.bracket_subgroups(&r.bracket_subgroups(&x, &y)?, &z)?;
        let yzx = r.bracket_subgroups(&r.bracket_subgroups(&y, &z)?, &x)?;
        let h = r.join(&xyz, &yzx);
        let zxy = r.bracket_subgroups(&r.bracket_subgroups(&z, &x)?, &y)?;
        three.expect(
            zxy.is_subgroup_of(&h),
            format!("X={} Y={} Z={}", r.describe(&x), r.describe(&y), r.describe(&z)),
            format!("[[Z,X],Y] = {} escapes H = {}", r.describe(&zxy), r.describe(&h)),
        );
    }
    checks.push(three);

    let upper = r.upper_central_series()?;
    let mut zf = CheckReport::new("finite-center-witness");
    let mut center_witnesses = Vec::new();
    for z in &upper {
        let w = r.quotient_center_witness(z)?;
        let images: Vec<Subgroup> = w
            .iter()
            .map(|&x| r.bracket_preimage(&r.generated(&[x])?, z))
            .collect::<Result<_>>()?;
        let cut = images.iter().fold(whole.clone(), |acc, c| acc.intersect(c));
        zf.expect(
            cut == r.bracket_preimage(&whole, z)? && w.len() <= r.rank(),
            format!("Z={}", r.describe(z)),
            format!("witness of length {} does not cut out the next center", w.len()),
        );
        center_witnesses.push(w.iter().map(|&x| r.format_element(x)).collect());
    }
    checks.push(zf);

    let fitting = r.fitting_bruteforce()?;
    let fitting_class = r.nilpotency_class_of(&fitting)?;
    let mut fit = CheckReport::new("fitting");
    fit.expect(
        r.is_ideal(&fitting)? && fitting_class.is_some(),
        "F",
        "F is not a nilpotent ideal",
    );
    for i in &ideals {
        if r.nilpotency_class_of(i)?.is_some() {
            fit.expect(
                i.is_subgroup_of(&fitting),
                format!("I={}", r.describe(i)),
                "nilpotent ideal not contained in F",
            );
        }
    }
    checks.push(fit);

    let lattice = r.centralizer_lattice()?;
    let mut mc = CheckReport::new("centralizer-chains");
    mc.expect(
        lattice.max_chain <= r.composition_length() + 1,
        "lattice",
        format!("chain of {} centralizers in a group of composition length {}", lattice.max_chain, r.composition_length()),
    );
    checks.push(mc);

    let passed = checks.iter().all(|c| c.passed);
    Ok(RingSuiteReport {
        ring: r.name().to_string(),
        order: r.order(),
        subgroups: subgroups.len(),
        subrings: subrings.len(),
        ideals: ideals.len(),
        sampled,
        fitting: r.describe(&fitting),
        fitting_class,
        centralizer_lattice_nodes: lattice.nodes.len(),
        centralizer_lattice_max_chain: lattice.max_chain,
        center_witnesses,
        checks,
        passed,
        notes: vec![
            "at finite order local nilpotence is nilpotence; the solvability statement is only checked for consistency"
                .into(),
        ],
    })
}

/// Uniform random table with antisymmetric fill, resampled until Jacobi holds.
pub fn random_ring(name: impl Into<String>, factors: &[u64], rng: &mut impl Rng) -> Result<FiniteLieRing> {
    let name = name.into();
    let r = factors.len();
    for _ in 0..10_000 {
        let mut brackets = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                let g = factors[i].gcd(&factors[j]);
                let terms: Vec<(i64, usize)> = factors
                    .iter()
                    .enumerate()
                    .map(|(k, &m)| {
                        // multiples of m / gcd(m, g) are exactly the residues killed by g
                        let step = m / m.gcd(&g);
                        ((rng.gen_range(0..m / step) * step) as i64, k)
                    })
                    .collect();
                brackets.push((i, j, terms));
            }
        }
        match FiniteLieRing::from_brackets(name.clone(), factors.to_vec(), &brackets) {
            Ok(ring) => return Ok(ring),
            Err(Error::JacobiFails(..)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Internal("no Jacobi-valid table after 10000 draws".into()))
}

/// Counts of elements per subgroup order; handy for summaries.
pub fn order_profile(groups: &[Subgroup]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for g in groups {
        *out.entry(g.order()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn heis2() -> FiniteLieRing {
        FiniteLieRing::from_brackets("heis", vec![2, 2, 2], &[(0, 1, vec![(1, 2)])]).unwrap()
    }

    #[test]
    fn enumeration() {
        let r = FiniteLieRing::abelian("a", vec![2, 2]).unwrap();
        assert_eq!(r.enumerate_elements().unwrap().count(), 4);
        let r = FiniteLieRing::abelian("a", vec![4, 2]).unwrap();
        let all: Vec<Vec<u64>> = r.enumerate_elements().unwrap().collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[2], vec![1, 0]);
        let big = FiniteLieRing::abelian("big", vec![3; 9]).unwrap();
        assert!(matches!(
            big.enumerate_elements().err(),
            Some(Error::OrderCapExceeded { order: 19683, cap: 4096 })
        ));
    }

    #[test]
    fn validation() {
        assert_eq!(
            FiniteLieRing::new("d", vec![2, 2], vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]])
                .unwrap_err(),
            Error::NotAlternating(0)
        );
        // [g1,g2] = g1 on Z/4 x Z/2 has order 4, which does not divide 2
        assert!(matches!(
            FiniteLieRing::from_brackets("o", vec![4, 2], &[(0, 1, vec![(1, 0)])]),
            Err(Error::InvalidRing(_))
        ));
        assert!(FiniteLieRing::from_brackets("o", vec![4, 2], &[(0, 1, vec![(2, 0)])]).is_ok());
        // in characteristic 2 a symmetric table is antisymmetric
        let t = vec![vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 0]], vec![vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]], vec![vec![0; 3]; 3]];
        assert!(FiniteLieRing::new("s", vec![2, 2, 2], t).is_ok());
    }

    #[test]
    fn heisenberg_centralizers() {
        let r = heis2();
        let g1 = r.generator(0);
        let g3 = r.generator(2);
        let c = r.centralizer_exhaustive(&[g1]).unwrap();
        let expected = r.generated(&[g1, g3]).unwrap();
        assert_eq!(c, expected);
        assert_eq!(c.key(), vec![0, r.index_of(&[0, 0, 1]), r.index_of(&[1, 0, 0]), r.index_of(&[1, 0, 1])]);
        assert_eq!(r.centralizer_exhaustive(&[]).unwrap(), r.whole().unwrap());
        let a = FiniteLieRing::abelian("a", vec![2, 2, 2]).unwrap();
        assert_eq!(a.centralizer_exhaustive(&[3, 5]).unwrap().order(), 8);
    }

    /// Brute force over every subset of the ring as the set `X`.
    fn lattice_oracle(r: &FiniteLieRing) -> HashSet<Vec<usize>> {
        let n = r.order() as usize;
        let mut out = HashSet::new();
        for mask in 0u64..(1 << n) {
            let xs: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let c: Vec<usize> = (0..n).filter(|&y| xs.iter().all(|&x| r.bracket(y, x) == 0)).collect();
            out.insert(c);
        }
        out
    }

    #[test]
    fn centralizer_lattices() {
        let r = heis2();
        let lat = r.centralizer_lattice().unwrap();
        let keys: HashSet<Vec<usize>> = lat.nodes.iter().map(Subgroup::key).collect();
        assert_eq!(keys, lattice_oracle(&r));
        assert_eq!(lat.nodes.len(), 5);
        assert_eq!(lat.max_chain, 3);
        assert_eq!(lat.edges.len(), 6);

        let a = FiniteLieRing::abelian("a", vec![2, 2]).unwrap();
        assert_eq!(a.centralizer_lattice().unwrap().nodes.len(), 1);
        let p = FiniteLieRing::abelian("p", vec![5]).unwrap();
        assert_eq!(p.centralizer_lattice().unwrap().max_chain, 1);
    }

    #[test]
    fn subgroup_counts() {
        // Gaussian binomials: (Z/2)^3 has 1 + 7 + 7 + 1 subgroups
        assert_eq!(FiniteLieRing::abelian("a", vec![2, 2, 2]).unwrap().subgroups().unwrap().len(), 16);
        assert_eq!(FiniteLieRing::abelian("a", vec![3, 3, 3]).unwrap().subgroups().unwrap().len(), 28);
        // Z/4 x Z/2: 1, three of order 2, three of order 4, whole
        let r = FiniteLieRing::abelian("a", vec![4, 2]).unwrap();
        assert_eq!(order_profile(&r.subgroups().unwrap()).into_iter().collect::<Vec<_>>(), vec![(1, 1), (2, 3), (4, 3), (8, 1)]);
        let capped = r.clone().with_caps(Caps { order: 4096, subgroups: 4 });
        assert_eq!(capped.subgroups().unwrap_err(), Error::SubgroupCapExceeded(4));
    }

    #[test]
    fn fitting_examples() {
        let r = heis2();
        assert_eq!(r.fitting_bruteforce().unwrap(), r.whole().unwrap());
        // [g1,g2] = 2g1 on Z/4 x Z/2: L^1 = <2g1>, L^2 = 0, so the ring is its own Fitting ideal
        let z4 = FiniteLieRing::from_brackets("z4z2", vec![4, 2], &[(0, 1, vec![(2, 0)])]).unwrap();
        assert_eq!(z4.nilpotency_class_of(&z4.whole().unwrap()).unwrap(), Some(2));
        assert_eq!(z4.fitting_bruteforce().unwrap(), z4.whole().unwrap());
        // Z/3 x Z/3 with [g1,g2] = g2 is not nilpotent; F = <g2>
        let aff = FiniteLieRing::from_brackets("aff", vec![3, 3], &[(0, 1, vec![(1, 1)])]).unwrap();
        assert_eq!(aff.fitting_bruteforce().unwrap(), aff.generated(&[aff.generator(1)]).unwrap());
    }

    #[test]
    fn keystone_on_rings() {
        let r = heis2();
        let zero = r.trivial().unwrap();
        for i in r.ideals().unwrap() {
            let terms = r.iterated_centralizer_terms(&i, &zero, 4).unwrap();
            for (n, t) in terms.iter().enumerate() {
                assert_eq!(&r.iterated_centralizer_of_ideal(&i, n).unwrap(), t);
            }
        }
        let upper = r.upper_central_series().unwrap();
        assert_eq!(upper.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 2, 8]);
    }

    #[test]
    fn suites_pass_on_bundled_rings() {
        for name in ["heis-z2", "z4z2", "heis-z3"] {
            let r = corpus::ring(name).unwrap();
            let report = verify_paper_suite(&r, &SuiteConfig::default()).unwrap();
            assert!(report.passed, "{name}: {:?}", report.checks);
            assert!(!report.sampled);
        }
        let a = FiniteLieRing::abelian("a", vec![2, 2]).unwrap();
        assert!(verify_paper_suite(&a, &SuiteConfig::default()).unwrap().passed);
    }

    #[test]
    fn random_rings_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let r = random_ring("r", &[4, 2], &mut rng).unwrap();
            assert!(FiniteLieRing::new("copy", r.factors().to_vec(), r.table().to_vec()).is_ok());
        }
    }

    #[test]
    fn caps_parse() {
        assert_eq!(Caps::parse("100").unwrap(), Caps { order: 100, subgroups: 1 << 16 });
        assert_eq!(Caps::parse("100, 7").unwrap(), Caps { order: 100, subgroups: 7 });
        assert!(Caps::parse("x").is_err());
        assert!(Caps::parse("1,2,3").is_err());
        assert!(Caps::parse("0").is_err());
    }
}
