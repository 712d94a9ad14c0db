//! Partial actions of a finite group on a finite weighted set.
//!
//! The carrier is `{0, .., m-1}` with strictly positive rational weights ν
//! (counting measure by default), so "null" means empty and quasi-invariance
//! is automatic. Condition (3) of the partial-action definition is checked
//! through the equivalent (3-1)–(3-3) set. Domains follow the convention
//! `α_t : X_{t⁻¹} → X_t`, i.e. `X_t = dom(α_{t⁻¹}) = im(α_t)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{subgroup_closure, FiniteGroup, GroupRef, Subgroup, ValidityReport};
use crate::pbij::PartialBijection;
use crate::ratio::{rat_one, rat_to_string, Rat};
use crate::unionfind::UnionFind;

#[derive(Debug, Clone)]
pub struct PartialAction {
    pub group: GroupRef,
    pub set_size: usize,
    /// alpha[t] : X_{t⁻¹} → X_t
    pub alpha: Vec<PartialBijection>,
    /// strictly positive weights ν on the carrier
    pub weights: Vec<Rat>,
}

impl PartialAction {
    pub fn new(group: GroupRef, alpha: Vec<PartialBijection>, weights: Option<Vec<Rat>>) -> Result<Self> {
        let m = alpha.first().map_or(0, |p| p.size());
        if alpha.len() != group.order {
            return Err(Error::SizeMismatch(format!(
                "need {} partial bijections, got {}",
                group.order,
                alpha.len()
            )));
        }
        if alpha.iter().any(|p| p.size() != m) {
            return Err(Error::SizeMismatch("mapping arrays differ in length".into()));
        }
        let weights = weights.unwrap_or_else(|| vec![rat_one(); m]);
        if weights.len() != m {
            return Err(Error::SizeMismatch("weight vector length".into()));
        }
        if !crate::ratio::all_positive(&weights) {
            return Err(Error::Invalid("weights must be strictly positive".into()));
        }
        Ok(PartialAction { group, set_size: m, alpha, weights })
    }

    /// Full global action β_t on a carrier, from total bijections.
    pub fn global(group: GroupRef, maps: Vec<Vec<usize>>) -> Result<Self> {
        let alpha = maps
            .into_iter()
            .map(|v| PartialBijection::new(v.into_iter().map(Some).collect()))
            .collect::<Result<Vec<_>>>()?;
        PartialAction::new(group, alpha, None)
    }

    pub fn trivial(group: GroupRef, m: usize) -> Self {
        let e = group.identity;
        let alpha = (0..group.order)
            .map(|t| if t == e { PartialBijection::identity(m) } else { PartialBijection::empty(m) })
            .collect();
        PartialAction { group, set_size: m, alpha, weights: vec![rat_one(); m] }
    }

    pub fn with_weights(mut self, weights: Vec<Rat>) -> Result<Self> {
        if weights.len() != self.set_size {
            return Err(Error::SizeMismatch("weight vector length".into()));
        }
        if !crate::ratio::all_positive(&weights) {
            return Err(Error::Invalid("weights must be strictly positive".into()));
        }
        self.weights = weights;
        Ok(self)
    }

    #[inline]
    pub fn apply(&self, t: usize, x: usize) -> Option<usize> {
        self.alpha[t].apply(x)
    }

    /// X_{t⁻¹}, the domain of α_t.
    pub fn dom(&self, t: usize) -> Vec<usize> {
        self.alpha[t].domain()
    }

    /// X_t as a membership mask (domain of α_{t⁻¹}).
    pub fn x_set_mask(&self, t: usize) -> Vec<bool> {
        let mut mask = vec![false; self.set_size];
        for x in self.alpha[self.group.inv(t)].domain() {
            mask[x] = true;
        }
        mask
    }

    pub fn x_set(&self, t: usize) -> Vec<usize> {
        self.alpha[self.group.inv(t)].domain()
    }

    pub fn is_global(&self) -> bool {
        self.alpha.iter().all(|p| p.is_total())
    }

    /// All germ edges (x, α_t(x), t), including identity loops.
    pub fn germ_edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for t in self.group.elements() {
            for x in self.alpha[t].domain() {
                out.push((x, self.alpha[t].apply(x).unwrap(), t));
            }
        }
        out
    }

    pub fn counting_weights(&self) -> bool {
        self.weights.iter().all(|w| *w == rat_one())
    }
}

/// Checks X_e = X and conditions (3-1)–(3-3); every violation carries
/// (axiom id, witness (s,t,x) where applicable).
pub fn verify_partial_action(a: &PartialAction) -> ValidityReport {
    let g = &a.group;
    let mut report = ValidityReport::default();
    let e = g.identity;

    // X_e = X and α_e = id.
    if !a.alpha[e].is_total() || (0..a.set_size).any(|x| a.alpha[e].apply(x) != Some(x)) {
        report.push("X_e=X", &[e], "α_e is not the identity on all of X".into());
    }

    // (3-1) α_{t⁻¹} = α_t⁻¹ (injectivity of the stored maps is structural but re-checked).
    for t in g.elements() {
        if !a.alpha[t].is_injective() {
            report.push("injectivity", &[t], format!("α_{t} is not injective"));
        }
        let tin = g.inv(t);
        if a.alpha[tin] != a.alpha[t].inverse() {
            let witness_x = (0..a.set_size)
                .find(|&x| {
                    a.alpha[t].apply(x).map_or(false, |y| a.alpha[tin].apply(y) != Some(x))
                        || a.alpha[tin].apply(x).map_or(false, |y| a.alpha[t].apply(y) != Some(x))
                })
                .unwrap_or(0);
            report.push("3-1", &[t, tin, witness_x], format!("α_{tin} ≠ α_{t}⁻¹"));
        }
    }

    // (3-2) α_t(X_{t⁻¹} ∩ X_s) = X_t ∩ X_{ts}.
    for t in g.elements() {
        let x_t = a.x_set_mask(t);
        for s in g.elements() {
            let x_s = a.x_set_mask(s);
            let ts = g.mul(t, s);
            let x_ts = a.x_set_mask(ts);
            let mut lhs = vec![false; a.set_size];
            for x in a.alpha[t].domain() {
                if x_s[x] {
                    lhs[a.alpha[t].apply(x).unwrap()] = true;
                }
            }
            let rhs: Vec<bool> = (0..a.set_size).map(|y| x_t[y] && x_ts[y]).collect();
            if lhs != rhs {
                let y = (0..a.set_size).find(|&y| lhs[y] != rhs[y]).unwrap();
                report.push("3-2", &[s, t, y], format!("α_{t}(X_{{t⁻¹}}∩X_{s}) ≠ X_{t}∩X_{ts} at {y}"));
            }
        }
    }

    // (3-3) α_s α_t = α_{st} on X_{t⁻¹} ∩ X_{(st)⁻¹}, bijectively onto X_s ∩ X_{st}.
    for s in g.elements() {
        for t in g.elements() {
            let st = g.mul(s, t);
            let dom_st_mask = {
                let mut mask = vec![false; a.set_size];
                for x in a.alpha[st].domain() {
                    mask[x] = true;
                }
                mask
            };
            let mut image = vec![false; a.set_size];
            for x in a.alpha[t].domain() {
                if !dom_st_mask[x] {
                    continue;
                }
                let y = a.alpha[t].apply(x).unwrap();
                match a.alpha[s].apply(y) {
                    None => {
                        report.push("3-3", &[s, t, x], "α_s undefined on α_t(x)".into());
                    }
                    Some(z) => {
                        if a.alpha[st].apply(x) != Some(z) {
                            report.push("3-3", &[s, t, x], "α_sα_t(x) ≠ α_{st}(x)".into());
                        }
                        image[z] = true;
                    }
                }
            }
            let x_s = a.x_set_mask(s);
            let x_st = a.x_set_mask(st);
            for y in 0..a.set_size {
                if (x_s[y] && x_st[y]) != image[y] {
                    report.push("3-3", &[s, t, y], "image of α_sα_t is not X_s∩X_{st}".into());
                    break;
                }
            }
        }
    }

    report
}

/// Restriction of a verified global action β to a nonempty subset U:
/// `X_t = U ∩ β_t(U)`, `α_t = β_t|`. Carrier is renumbered along sorted U;
/// the returned labels map new indices back to β's carrier.
pub fn restrict_global(beta: &PartialAction, subset: &[usize]) -> Result<(PartialAction, Vec<usize>)> {
    if !beta.is_global() {
        return Err(Error::NotVerified("restrict_global", "global action"));
    }
    if subset.is_empty() {
        return Err(Error::Invalid("subset U must be nonempty".into()));
    }
    let mut labels: Vec<usize> = subset.to_vec();
    labels.sort_unstable();
    labels.dedup();
    if labels.iter().any(|&x| x >= beta.set_size) {
        return Err(Error::Invalid("subset element out of range".into()));
    }
    let m = labels.len();
    let index_of: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let alpha = beta
        .group
        .elements()
        .map(|t| {
            let mapping = labels
                .iter()
                .map(|&x| {
                    let y = beta.apply(t, x).unwrap();
                    index_of.get(&y).copied()
                })
                .collect();
            PartialBijection { mapping }
        })
        .collect();
    let weights = labels.iter().map(|&x| beta.weights[x].clone()).collect();
    let action = PartialAction { group: beta.group.clone(), set_size: m, alpha, weights };
    Ok((action, labels))
}

/// Partial 2-cocycle values σ(x,s) on germs (x,s), x ∈ X_{s⁻¹}.
#[derive(Debug, Clone)]
pub struct Cocycle2 {
    pub values: BTreeMap<(usize, usize), Rat>,
}

impl Cocycle2 {
    pub fn get(&self, x: usize, s: usize) -> Option<&Rat> {
        self.values.get(&(x, s))
    }

    /// σ(x,ts) = σ(x,s)·σ(α_s(x),t) whenever x ∈ X_{s⁻¹} ∩ X_{s⁻¹t⁻¹}.
    pub fn verify(&self, a: &PartialAction) -> Result<()> {
        let g = &a.group;
        for s in g.elements() {
            for x in a.alpha[s].domain() {
                if self.get(x, s).is_none() {
                    return Err(Error::Invalid(format!("cocycle undefined on germ ({x},{s})")));
                }
            }
        }
        for s in g.elements() {
            for t in g.elements() {
                let ts = g.mul(t, s);
                for x in a.alpha[s].domain() {
                    if a.alpha[ts].apply(x).is_none() {
                        continue;
                    }
                    let y = a.alpha[s].apply(x).unwrap();
                    let lhs = self.get(x, ts).cloned();
                    let rhs = match (self.get(x, s), self.get(y, t)) {
                        (Some(a1), Some(b1)) => Some(a1 * b1),
                        _ => None,
                    };
                    if lhs.is_none() || lhs != rhs {
                        return Err(Error::CocycleInvalid { x, s, u: t });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_strings(&self) -> BTreeMap<String, String> {
        self.values
            .iter()
            .map(|((x, s), v)| (format!("{x},{s}"), rat_to_string(v)))
            .collect()
    }
}

/// Radon–Nikodym cocycle σ(x,s) = ν(α_s(x))/ν(x), exact rationals.
pub fn rn_cocycle(a: &PartialAction) -> Cocycle2 {
    let mut values = BTreeMap::new();
    for s in a.group.elements() {
        for x in a.alpha[s].domain() {
            let y = a.alpha[s].apply(x).unwrap();
            values.insert((x, s), &a.weights[y] / &a.weights[x]);
        }
    }
    Cocycle2 { values }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitPartition {
    /// Orbits ordered by smallest member, members sorted.
    pub orbits: Vec<Vec<usize>>,
    pub is_minimal: bool,
}

/// Connected components of the germ graph {x ~ α_t(x)}. For finite discrete
/// carriers "orbit dense" is read as "orbit equals X", so minimal ⟺ one orbit.
pub fn orbits(a: &PartialAction) -> OrbitPartition {
    let mut uf = UnionFind::new(a.set_size);
    for (x, y, _) in a.germ_edges() {
        uf.union(x, y);
    }
    let orbits = uf.classes();
    let is_minimal = orbits.len() == 1;
    OrbitPartition { orbits, is_minimal }
}

pub fn orbit_ids(a: &PartialAction) -> Vec<usize> {
    let p = orbits(a);
    let mut id = vec![0usize; a.set_size];
    for (i, orbit) in p.orbits.iter().enumerate() {
        for &x in orbit {
            id[x] = i;
        }
    }
    id
}

/// X = ∪_{r∈G} X_{sr} ∩ X_{tr} for all pairs (s,t). Finite groups only:
/// the union over r is unbounded for a free context.
pub fn is_partially_transitive(a: &PartialAction) -> (bool, Option<(usize, usize, usize)>) {
    let g = &a.group;
    for s in g.elements() {
        for t in g.elements() {
            let mut covered = vec![false; a.set_size];
            for r in g.elements() {
                let xs = a.x_set_mask(g.mul(s, r));
                let xt = a.x_set_mask(g.mul(t, r));
                for x in 0..a.set_size {
                    covered[x] |= xs[x] && xt[x];
                }
            }
            if let Some(x) = (0..a.set_size).find(|&x| !covered[x]) {
                return (false, Some((s, t, x)));
            }
        }
    }
    (true, None)
}

/// α_sβ_t = β_tα_s on X_{s⁻¹} ∩ X_{t⁻¹}, graphs compared exactly.
pub fn is_symmetric_pair(
    a: &PartialAction,
    b: &PartialAction,
) -> Result<(bool, Option<(usize, usize, usize)>)> {
    if a.set_size != b.set_size || a.group.order != b.group.order {
        return Err(Error::SizeMismatch("symmetric pair carriers".into()));
    }
    for t in a.group.elements() {
        if a.x_set(t) != b.x_set(t) {
            return Err(Error::DomainFamilyMismatch(t));
        }
    }
    let g = &a.group;
    for s in g.elements() {
        for t in g.elements() {
            let dom_s = a.x_set_mask(g.inv(s));
            let dom_t = a.x_set_mask(g.inv(t));
            for x in 0..a.set_size {
                if !(dom_s[x] && dom_t[x]) {
                    continue;
                }
                let ab = b.apply(t, x).and_then(|y| a.apply(s, y));
                let ba = a.apply(s, x).and_then(|y| b.apply(t, y));
                if ab != ba {
                    return Ok((false, Some((s, t, x))));
                }
            }
        }
    }
    Ok((true, None))
}

/// H = {t : X_{t⁻¹} = X}; on a finite carrier the restriction of α to H is a
/// global action, re-verified here before returning.
pub fn global_core_subgroup(a: &PartialAction) -> Result<Subgroup> {
    let g = &a.group;
    let members: Vec<usize> = g.elements().filter(|&t| a.alpha[t].is_total()).collect();
    let sub = Subgroup { elements: members.clone() };
    let check = sub.verify(g);
    if !check.is_valid() {
        return Err(Error::Invalid(format!(
            "full-domain set is not a subgroup: {}",
            check.violations[0].axiom
        )));
    }
    // Restriction to H is a global action: total maps composing multiplicatively.
    for &h1 in &members {
        for &h2 in &members {
            let prod = g.mul(h1, h2);
            for x in 0..a.set_size {
                let lhs = a.apply(h2, x).and_then(|y| a.apply(h1, y));
                if lhs != a.apply(prod, x) {
                    return Err(Error::Invalid(format!(
                        "restriction to core not global at ({h1},{h2},{x})"
                    )));
                }
            }
        }
    }
    Ok(sub)
}

/// α-invariant subsets are exactly unions of orbits (the condition
/// α_t(B∩X_{t⁻¹}) = B∩X_t is closed under complement and union, with orbits
/// as atoms). Enumerates all of them when there are few orbits, and
/// re-verifies each against the two-sided condition.
pub fn invariant_subsets(a: &PartialAction) -> Vec<Vec<usize>> {
    let part = orbits(a);
    let k = part.orbits.len();
    let mut out = Vec::new();
    if k <= 12 {
        for mask in 0u32..(1u32 << k) {
            let mut subset: Vec<usize> = Vec::new();
            for (i, orbit) in part.orbits.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    subset.extend_from_slice(orbit);
                }
            }
            subset.sort_unstable();
            debug_assert!(is_invariant_subset(a, &subset));
            out.push(subset);
        }
        out.sort();
    } else {
        out = part.orbits;
    }
    out
}

pub fn is_invariant_subset(a: &PartialAction, b: &[usize]) -> bool {
    let mut mask = vec![false; a.set_size];
    for &x in b {
        mask[x] = true;
    }
    for t in a.group.elements() {
        let mut lhs = vec![false; a.set_size];
        for x in a.alpha[t].domain() {
            if mask[x] {
                lhs[a.alpha[t].apply(x).unwrap()] = true;
            }
        }
        let x_t = a.x_set_mask(t);
        let rhs: Vec<bool> = (0..a.set_size).map(|y| mask[y] && x_t[y]).collect();
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Positive weights make "null" mean empty, so ergodic ⟺ single orbit.
pub fn is_ergodic(a: &PartialAction) -> bool {
    orbits(a).orbits.len() == 1
}

/// Verifies that p : X ↠ Y is a factor map: X_t = p⁻¹(Y_t) and
/// β_t(p(x)) = p(α_t(x)).
pub fn factor_check(
    x_action: &PartialAction,
    y_action: &PartialAction,
    p: &[usize],
) -> Result<(bool, Option<(usize, usize)>)> {
    if p.len() != x_action.set_size {
        return Err(Error::SizeMismatch("projection length".into()));
    }
    let mut hit = vec![false; y_action.set_size];
    for &y in p {
        if y >= y_action.set_size {
            return Err(Error::Invalid("projection out of range".into()));
        }
        hit[y] = true;
    }
    if !hit.iter().all(|&h| h) {
        return Err(Error::NotSurjective);
    }
    let g = &x_action.group;
    for t in g.elements() {
        let yt = y_action.x_set_mask(t);
        let xt = x_action.x_set_mask(t);
        for x in 0..x_action.set_size {
            if xt[x] != yt[p[x]] {
                return Ok((false, Some((t, x))));
            }
        }
        for x in x_action.alpha[t].domain() {
            let lhs = y_action.apply(t, p[x]);
            let rhs = x_action.alpha[t].apply(x).map(|z| p[z]);
            if lhs != rhs {
                return Ok((false, Some((t, x))));
            }
        }
    }
    Ok((true, None))
}

/// The E1 running instance: ℤ/4 rotation on 4 points restricted to {0,1}.
pub fn instance_e1() -> PartialAction {
    let z4 = Arc::new(FiniteGroup::cyclic(4));
    let rotation = PartialAction::global(
        z4,
        (0..4).map(|t| (0..4).map(|x| (x + t) % 4).collect()).collect(),
    )
    .unwrap();
    restrict_global(&rotation, &[0, 1]).unwrap().0
}

/// The E3 instance: ℤ₂ gluing on {0,..,m-1} with α_g = id on {cut+1,..,m-1}.
pub fn instance_interval_gluing(m: usize, cut: usize) -> Result<PartialAction> {
    if m == 0 || cut + 1 > m {
        return Err(Error::Invalid("cut out of range".into()));
    }
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let mut mapping = vec![None; m];
    for x in cut + 1..m {
        mapping[x] = Some(x);
    }
    let alpha = vec![PartialBijection::identity(m), PartialBijection::new(mapping)?];
    PartialAction::new(z2, alpha, None)
}

pub fn disjoint_union(a: &PartialAction, b: &PartialAction) -> Result<PartialAction> {
    if a.group.order != b.group.order || a.group.table != b.group.table {
        return Err(Error::SizeMismatch("disjoint union needs the same group".into()));
    }
    let m = a.set_size + b.set_size;
    let alpha = a
        .group
        .elements()
        .map(|t| {
            let mut mapping = vec![None; m];
            for (x, &img) in a.alpha[t].mapping.iter().enumerate() {
                mapping[x] = img;
            }
            for (x, &img) in b.alpha[t].mapping.iter().enumerate() {
                mapping[a.set_size + x] = img.map(|y| a.set_size + y);
            }
            PartialBijection { mapping }
        })
        .collect();
    let mut weights = a.weights.clone();
    weights.extend(b.weights.iter().cloned());
    PartialAction::new(a.group.clone(), alpha, Some(weights))
}

/// Subgroup closure re-export for CLI convenience.
pub fn core_subgroup_of(group: &FiniteGroup, seed: &[usize]) -> Result<Subgroup> {
    subgroup_closure(group, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    #[test]
    fn e1_shape_matches_hand_computation() {
        let a = instance_e1();
        assert_eq!(a.set_size, 2);
        // X_1 = {1}, X_2 = ∅, X_3 = {0}; α_1 : 0 ↦ 1
        assert_eq!(a.x_set(1), vec![1]);
        assert_eq!(a.x_set(2), Vec::<usize>::new());
        assert_eq!(a.x_set(3), vec![0]);
        assert_eq!(a.apply(1, 0), Some(1));
        assert!(verify_partial_action(&a).is_valid());
    }

    #[test]
    fn global_actions_pass() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let rot = PartialAction::global(
            z4,
            (0..4).map(|t| (0..4).map(|x| (x + t) % 4).collect()).collect(),
        )
        .unwrap();
        assert!(verify_partial_action(&rot).is_valid());
        assert!(rot.is_global());
    }

    #[test]
    fn broken_inverse_detected() {
        let mut a = instance_e1();
        // redefine α_3 to 1 ↦ 1: inverse of α_1 (0↦1) is broken
        a.alpha[3] = PartialBijection::new(vec![None, Some(1)]).unwrap();
        let report = verify_partial_action(&a);
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.axiom == "3-1" && v.witness[0] == 1));
    }

    #[test]
    fn arc_restriction_domain_sizes() {
        // ℤ/12 rotation restricted to an arc of 5: |X_t| = max(0, 5 - dist(t))
        let z12 = Arc::new(FiniteGroup::cyclic(12));
        let rot = PartialAction::global(
            z12,
            (0..12).map(|t| (0..12).map(|x| (x + t) % 12).collect()).collect(),
        )
        .unwrap();
        let (a, _) = restrict_global(&rot, &[0, 1, 2, 3, 4]).unwrap();
        assert!(verify_partial_action(&a).is_valid());
        for t in 0..12usize {
            let dist = t.min(12 - t);
            let expected = 5usize.saturating_sub(dist);
            assert_eq!(a.x_set(t).len(), expected, "t={t}");
        }
    }

    #[test]
    fn rn_cocycle_examples() {
        let a = instance_e1();
        let sigma = rn_cocycle(&a);
        assert!(sigma.verify(&a).is_ok());
        for (_, v) in sigma.values.iter() {
            assert_eq!(*v, rat_one());
        }

        let b = instance_e1().with_weights(vec![rat(1, 1), rat(2, 1)]).unwrap();
        let sigma = rn_cocycle(&b);
        assert_eq!(sigma.get(0, 1).unwrap(), &rat(2, 1));
        assert!(sigma.verify(&b).is_ok());
        // identity germ: σ(x,e) = 1
        assert_eq!(sigma.get(0, 0).unwrap(), &rat_one());
        assert_eq!(sigma.get(1, 0).unwrap(), &rat_one());
    }

    #[test]
    fn orbit_examples() {
        let a = instance_e1();
        let p = orbits(&a);
        assert_eq!(p.orbits, vec![vec![0, 1]]);
        assert!(p.is_minimal);
        assert!(is_ergodic(&a));

        let t = PartialAction::trivial(Arc::new(FiniteGroup::cyclic(3)), 4);
        let p = orbits(&t);
        assert_eq!(p.orbits.len(), 4);
        assert!(!p.is_minimal);
    }

    #[test]
    fn partial_transitivity_literal_definition() {
        // Any global action is partially transitive (r = s⁻¹ covers X).
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let rot = PartialAction::global(
            z4,
            (0..4).map(|t| (0..4).map(|x| (x + t) % 4).collect()).collect(),
        )
        .unwrap();
        assert!(is_partially_transitive(&rot).0);

        // E1 fails the literal definition at pair difference 2: every
        // X_{sr} ∩ X_{tr} with t-s = 2 is empty. Computed, not assumed.
        let a = instance_e1();
        let (ok, witness) = is_partially_transitive(&a);
        assert!(!ok);
        let (s, t, _) = witness.unwrap();
        assert_eq!((t + 4 - s) % 4, 2);

        // An arc of 3 in ℤ/4 does satisfy it.
        let rot = PartialAction::global(
            Arc::new(FiniteGroup::cyclic(4)),
            (0..4).map(|t| (0..4).map(|x| (x + t) % 4).collect()).collect(),
        )
        .unwrap();
        let (big_arc, _) = restrict_global(&rot, &[0, 1, 2]).unwrap();
        assert!(is_partially_transitive(&big_arc).0);

        // Trivial action on ≥ 2 points with some s ≠ t: false.
        let t = PartialAction::trivial(Arc::new(FiniteGroup::cyclic(3)), 2);
        assert!(!is_partially_transitive(&t).0);
    }

    #[test]
    fn symmetric_pair_examples() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let rot = PartialAction::global(
            z4.clone(),
            (0..4).map(|t| (0..4).map(|x| (x + t) % 4).collect()).collect(),
        )
        .unwrap();
        // abelian global action commutes with itself
        assert!(is_symmetric_pair(&rot, &rot).unwrap().0);

        // left vs right translation of ℤ/4 on itself (right uses inverse to act)
        let left = rot.clone();
        let right = PartialAction::global(
            z4,
            (0..4).map(|t| (0..4).map(|x| (x + 4 - t) % 4).collect()).collect(),
        )
        .unwrap();
        assert!(is_symmetric_pair(&left, &right).unwrap().0);

        // E1 with itself: commutation verdict computed on the 0↦1 edge
        let a = instance_e1();
        assert!(is_symmetric_pair(&a, &a).unwrap().0);

        // s3 left vs right translations
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let left = PartialAction::global(
            s3.clone(),
            s3.elements().map(|t| s3.elements().map(|x| s3.mul(t, x)).collect()).collect(),
        )
        .unwrap();
        let right = PartialAction::global(
            s3.clone(),
            s3.elements().map(|t| s3.elements().map(|x| s3.mul(x, s3.inv(t))).collect()).collect(),
        )
        .unwrap();
        assert!(is_symmetric_pair(&left, &right).unwrap().0);
    }

    #[test]
    fn global_core_examples() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let rot = PartialAction::global(
            z4.clone(),
            (0..4).map(|t| (0..4).map(|x| (x + t) % 4).collect()).collect(),
        )
        .unwrap();
        assert_eq!(global_core_subgroup(&rot).unwrap().elements, vec![0, 1, 2, 3]);

        let a = instance_e1();
        assert_eq!(global_core_subgroup(&a).unwrap().elements, vec![0]);

        // ℤ/4 with X_2 full, X_1, X_3 proper: core {0,2}
        // (α_1 must be a partial identity here: (3-3) at s=t=1 forces
        // α_1∘α_1 ⊆ α_2 on X_3, and a 0↦1 edge would break (3-2))
        let alpha = vec![
            PartialBijection::identity(2),
            PartialBijection::new(vec![Some(0), None]).unwrap(),
            PartialBijection::identity(2),
            PartialBijection::new(vec![Some(0), None]).unwrap(),
        ];
        let a2 = PartialAction::new(z4, alpha, None).unwrap();
        assert!(verify_partial_action(&a2).is_valid());
        assert_eq!(global_core_subgroup(&a2).unwrap().elements, vec![0, 2]);
    }

    #[test]
    fn invariant_subsets_examples() {
        let a = instance_e1();
        let inv = invariant_subsets(&a);
        assert_eq!(inv, vec![vec![], vec![0, 1]]);

        let doubled = disjoint_union(&a, &a).unwrap();
        assert!(verify_partial_action(&doubled).is_valid());
        let inv = invariant_subsets(&doubled);
        assert_eq!(inv.len(), 4);
        assert!(inv.contains(&vec![0, 1]));
        assert!(inv.contains(&vec![2, 3]));
        assert!(!is_ergodic(&doubled));
    }

    #[test]
    fn factor_check_examples() {
        let a = instance_e1();
        let ids: Vec<usize> = (0..a.set_size).collect();
        assert!(factor_check(&a, &a, &ids).unwrap().0);

        // quotient of doubled action onto one copy
        let doubled = disjoint_union(&a, &a).unwrap();
        let p = vec![0, 1, 0, 1];
        assert!(factor_check(&doubled, &a, &p).unwrap().0);

        // collapsing the non-invariant pair {0} vs {1} to a single point fails
        let z4 = a.group.clone();
        let point = PartialAction::trivial(z4, 1);
        let collapse = vec![0, 0];
        let (ok, witness) = factor_check(&a, &point, &collapse).unwrap();
        assert!(!ok);
        assert!(witness.is_some());
    }

    #[test]
    fn interval_gluing_valid() {
        let e3 = instance_interval_gluing(3, 1).unwrap();
        assert!(verify_partial_action(&e3).is_valid());
        assert_eq!(e3.x_set(1), vec![2]);
    }
}
