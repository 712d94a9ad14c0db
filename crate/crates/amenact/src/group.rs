//! Finite group arithmetic over dense Cayley tables.
//!
//! Groups up to order 256 are stored as n×n index tables; permutation
//! generators are expanded into a table eagerly so every downstream
//! algorithm can index by element.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const MAX_ORDER: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub order: usize,
    /// table[t][s] = t·s
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverses: Vec<usize>,
}

/// One violated axiom with a witness; an empty report means valid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: &str, witness: &[usize], detail: String) {
        self.violations.push(Violation {
            axiom: axiom.into(),
            witness: witness.to_vec(),
            detail,
        });
    }
}

/// Checks every group axiom on a raw table, reporting all violations.
pub fn verify_group(table: &[Vec<usize>]) -> Result<ValidityReport> {
    let n = table.len();
    if n == 0 || n > MAX_ORDER {
        return Err(Error::MalformedGroup(format!("order {n} out of range")));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedGroup(format!("row {i} has length {}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= n) {
            return Err(Error::MalformedGroup(format!("entry {bad} out of range in row {i}")));
        }
    }

    let mut report = ValidityReport::default();

    // Latin square: left/right cancellation.
    for t in 0..n {
        let mut seen = vec![false; n];
        for s in 0..n {
            let v = table[t][s];
            if seen[v] {
                report.push("not right-cancellative", &[t, s], format!("row {t} repeats {v}"));
            }
            seen[v] = true;
        }
    }
    for s in 0..n {
        let mut seen = vec![false; n];
        for t in 0..n {
            let v = table[t][s];
            if seen[v] {
                report.push("not left-cancellative", &[t, s], format!("column {s} repeats {v}"));
            }
            seen[v] = true;
        }
    }

    // Identity.
    let identity = (0..n).find(|&e| (0..n).all(|t| table[e][t] == t && table[t][e] == t));
    match identity {
        None => report.push("no identity", &[], "no e with e·t = t·e = t".into()),
        Some(e) => {
            for t in 0..n {
                if !(0..n).any(|u| table[t][u] == e && table[u][t] == e) {
                    report.push("no inverse", &[t], format!("element {t} has no two-sided inverse"));
                }
            }
        }
    }

    // Associativity on all triples.
    'assoc: for t in 0..n {
        for s in 0..n {
            for u in 0..n {
                if table[table[t][s]][u] != table[t][table[s][u]] {
                    report.push("not associative", &[t, s, u], format!("(t·s)·u ≠ t·(s·u)"));
                    // one witness per report is enough for associativity
                    break 'assoc;
                }
            }
        }
    }

    Ok(report)
}

impl FiniteGroup {
    /// Builds from a table, verifying all axioms first.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let report = verify_group(&table)?;
        if !report.is_valid() {
            return Err(Error::Invalid(format!(
                "group table invalid: {} violation(s), first: {}",
                report.violations.len(),
                report.violations[0].axiom
            )));
        }
        let n = table.len();
        let identity = (0..n)
            .find(|&e| (0..n).all(|t| table[e][t] == t && table[t][e] == t))
            .expect("verified");
        let inverses = (0..n)
            .map(|t| (0..n).find(|&u| table[t][u] == identity).expect("verified"))
            .collect();
        Ok(FiniteGroup { order: n, table, identity, inverses })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|t| (0..n).map(|s| (t + s) % n).collect()).collect();
        FiniteGroup::from_table(table).expect("cyclic group is valid")
    }

    /// Group generated by permutations of `0..degree`; elements are products
    /// of generators, tabled eagerly (BFS over the permutation image).
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        for g in gens {
            if g.len() != degree {
                return Err(Error::MalformedGroup("generator degree mismatch".into()));
            }
            let mut seen = vec![false; degree];
            for &v in g {
                if v >= degree || seen[v] {
                    return Err(Error::MalformedGroup("generator is not a permutation".into()));
                }
                seen[v] = true;
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems: Vec<Vec<usize>> = vec![id.clone()];
        let mut index: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
        index.insert(id, 0);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for g in gens {
                let p = &elems[i];
                let prod: Vec<usize> = (0..degree).map(|x| g[p[x]]).collect();
                if !index.contains_key(&prod) {
                    if elems.len() >= MAX_ORDER {
                        return Err(Error::MalformedGroup(format!(
                            "generated group exceeds order {MAX_ORDER}"
                        )));
                    }
                    index.insert(prod.clone(), elems.len());
                    frontier.push(elems.len());
                    elems.push(prod);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![vec![0usize; n]; n];
        for t in 0..n {
            for s in 0..n {
                let prod: Vec<usize> = (0..degree).map(|x| elems[t][elems[s][x]]).collect();
                table[t][s] = index[&prod];
            }
        }
        FiniteGroup::from_table(table)
    }

    pub fn symmetric(degree: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if degree >= 2 {
            let mut swap: Vec<usize> = (0..degree).collect();
            swap.swap(0, 1);
            gens.push(swap);
            let cycle: Vec<usize> = (1..degree).chain(std::iter::once(0)).collect();
            gens.push(cycle);
        }
        FiniteGroup::from_permutations(degree, &gens)
    }

    pub fn klein_four() -> Self {
        // ℤ/2 × ℤ/2 encoded as bit pairs.
        let table = (0..4).map(|t| (0..4).map(|s| t ^ s).collect()).collect();
        FiniteGroup::from_table(table).expect("klein four is valid")
    }

    #[inline]
    pub fn mul(&self, t: usize, s: usize) -> usize {
        self.table[t][s]
    }

    #[inline]
    pub fn inv(&self, t: usize) -> usize {
        self.inverses[t]
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    /// A small generating set: greedily add elements until closure is everything.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut have: BTreeSet<usize> = [self.identity].into();
        for t in self.elements() {
            if have.contains(&t) {
                continue;
            }
            gens.push(t);
            let sub = subgroup_closure_set(self, &gens);
            have = sub;
            if have.len() == self.order {
                break;
            }
        }
        gens
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Subgroup {
    /// Sorted element indices, closed under product and inverse.
    pub elements: Vec<usize>,
}

impl Subgroup {
    pub fn contains(&self, t: usize) -> bool {
        self.elements.binary_search(&t).is_ok()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn verify(&self, group: &FiniteGroup) -> ValidityReport {
        let mut report = ValidityReport::default();
        if !self.contains(group.identity) {
            report.push("subgroup misses identity", &[], String::new());
        }
        for &a in &self.elements {
            if !self.contains(group.inv(a)) {
                report.push("subgroup not inverse-closed", &[a], String::new());
            }
            for &b in &self.elements {
                if !self.contains(group.mul(a, b)) {
                    report.push("subgroup not product-closed", &[a, b], String::new());
                }
            }
        }
        report
    }

    pub fn is_normal(&self, group: &FiniteGroup) -> bool {
        group.elements().all(|g| {
            self.elements
                .iter()
                .all(|&h| self.contains(group.mul(group.mul(g, h), group.inv(g))))
        })
    }
}

fn subgroup_closure_set(group: &FiniteGroup, seed: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = [group.identity].into();
    let mut frontier: Vec<usize> = vec![group.identity];
    for &s in seed {
        if set.insert(s) {
            frontier.push(s);
        }
        let inv = group.inv(s);
        if set.insert(inv) {
            frontier.push(inv);
        }
    }
    while let Some(a) = frontier.pop() {
        let snapshot: Vec<usize> = set.iter().copied().collect();
        for b in snapshot {
            for prod in [group.mul(a, b), group.mul(b, a)] {
                if set.insert(prod) {
                    frontier.push(prod);
                }
            }
        }
    }
    set
}

/// Smallest subgroup containing the seed elements.
pub fn subgroup_closure(group: &FiniteGroup, seed: &[usize]) -> Result<Subgroup> {
    if let Some(&bad) = seed.iter().find(|&&s| s >= group.order) {
        return Err(Error::Invalid(format!("seed element {bad} out of range")));
    }
    Ok(Subgroup { elements: subgroup_closure_set(group, seed).into_iter().collect() })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Transversal {
    /// One representative per left coset xH, the smallest index in its coset;
    /// sorted, so the output is stable across runs.
    pub reps: Vec<usize>,
}

impl Transversal {
    /// Decomposes g = rep·h, returning (rep index in `reps`, h).
    pub fn decompose(&self, group: &FiniteGroup, sub: &Subgroup, g: usize) -> (usize, usize) {
        for (j, &x) in self.reps.iter().enumerate() {
            let h = group.mul(group.inv(x), g);
            if sub.contains(h) {
                return (j, h);
            }
        }
        unreachable!("transversal covers all cosets");
    }
}

/// Deterministic transversal: smallest index per left coset.
pub fn transversal_select(group: &FiniteGroup, sub: &Subgroup) -> Transversal {
    let mut assigned = vec![false; group.order];
    let mut reps = Vec::new();
    for x in group.elements() {
        if assigned[x] {
            continue;
        }
        reps.push(x);
        for &h in &sub.elements {
            assigned[group.mul(x, h)] = true;
        }
    }
    Transversal { reps }
}

pub type GroupRef = Arc<FiniteGroup>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_table_valid() {
        let g = FiniteGroup::cyclic(4);
        assert_eq!(g.identity, 0);
        assert_eq!(g.inv(1), 3);
        assert!(verify_group(&g.table).unwrap().is_valid());
    }

    #[test]
    fn duplicated_row_reports_cancellation() {
        let mut table = FiniteGroup::cyclic(4).table;
        table[1] = table[0].clone();
        let report = verify_group(&table).unwrap();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.axiom.contains("left-cancellative")));
    }

    #[test]
    fn klein_four_valid_by_brute_force() {
        // oracle: direct check of all axioms on the table
        let g = FiniteGroup::klein_four();
        let t = &g.table;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    assert_eq!(t[t[a][b]][c], t[a][t[b][c]]);
                }
            }
        }
        assert!(verify_group(t).unwrap().is_valid());
    }

    #[test]
    fn closure_examples() {
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(subgroup_closure(&z4, &[2]).unwrap().elements, vec![0, 2]);
        assert_eq!(subgroup_closure(&z4, &[1]).unwrap().elements, vec![0, 1, 2, 3]);

        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order, 6);
        // a transposition generates a 2-element subgroup; oracle: enumerate
        let transposition = s3
            .elements()
            .find(|&t| t != s3.identity && s3.mul(t, t) == s3.identity)
            .unwrap();
        let sub = subgroup_closure(&s3, &[transposition]).unwrap();
        assert_eq!(sub.elements, vec![s3.identity, transposition]);
        assert!(sub.verify(&s3).is_valid());
    }

    #[test]
    fn transversal_examples() {
        let z4 = FiniteGroup::cyclic(4);
        let h = subgroup_closure(&z4, &[2]).unwrap();
        let tr = transversal_select(&z4, &h);
        assert_eq!(tr.reps, vec![0, 1]);

        let full = subgroup_closure(&z4, &[1]).unwrap();
        assert_eq!(transversal_select(&z4, &full).reps, vec![0]);

        let trivial = subgroup_closure(&z4, &[]).unwrap();
        assert_eq!(transversal_select(&z4, &trivial).reps, vec![0, 1, 2, 3]);
    }

    #[test]
    fn transversal_decompose_round_trip() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let transposition = s3
            .elements()
            .find(|&t| t != s3.identity && s3.mul(t, t) == s3.identity)
            .unwrap();
        let h = subgroup_closure(&s3, &[transposition]).unwrap();
        let tr = transversal_select(&s3, &h);
        for g in s3.elements() {
            let (j, hh) = tr.decompose(&s3, &h, g);
            assert_eq!(s3.mul(tr.reps[j], hh), g);
            assert!(h.contains(hh));
        }
    }
}
