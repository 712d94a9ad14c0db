//! Germ groupoids X⋊G of partial actions, groupoid axiom checking,
//! s-bijective morphisms, and exact amenability certificates.
//!
//! The Haar system is counting measure on range fibers; at finite scale the
//! net conditions collapse to exact equalities, so a certificate either has
//! defect zero or it is not a certificate.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use crate::action::{verify_partial_action, PartialAction};
use crate::error::{Error, Result};
use crate::group::ValidityReport;
use crate::ratio::{rat, rat_one, rat_to_string, Rat};

/// A finite groupoid given by raw tables; products are stored explicitly so
/// broken instances can be represented and diagnosed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Groupoid {
    pub unit_count: usize,
    pub source: Vec<usize>,
    pub range: Vec<usize>,
    pub inverse: Vec<usize>,
    /// identity arrow at each unit
    pub unit_arrow: Vec<usize>,
    /// product[(g, h)] = g·h for composable pairs (s(g) = r(h))
    pub product: BTreeMap<(usize, usize), usize>,
}

impl Groupoid {
    pub fn arrow_count(&self) -> usize {
        self.source.len()
    }

    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.product.get(&(g, h)).copied()
    }

    /// G^u = r⁻¹(u)
    pub fn range_fiber(&self, u: usize) -> Vec<usize> {
        (0..self.arrow_count()).filter(|&g| self.range[g] == u).collect()
    }

    /// G_u = s⁻¹(u)
    pub fn source_fiber(&self, u: usize) -> Vec<usize> {
        (0..self.arrow_count()).filter(|&g| self.source[g] == u).collect()
    }
}

/// Germ groupoid of a partial action: arrows (x,t) with x ∈ X_{t⁻¹},
/// s((x,t)) = x, r((x,t)) = α_t(x), (x,t)⁻¹ = (α_t(x), t⁻¹), and
/// (α_s(x), t)·(x, s) = (x, ts).
#[derive(Debug, Clone)]
pub struct GermGroupoid {
    pub groupoid: Groupoid,
    /// arrow index ↦ (x, t)
    pub germs: Vec<(usize, usize)>,
    pub arrow_of_germ: BTreeMap<(usize, usize), usize>,
}

pub fn build_germ_groupoid(action: &PartialAction) -> Result<GermGroupoid> {
    if !verify_partial_action(action).is_valid() {
        return Err(Error::NotVerified("build_germ_groupoid", "partial action"));
    }
    let g = &action.group;
    let mut germs: Vec<(usize, usize)> = Vec::new();
    for t in g.elements() {
        for x in action.alpha[t].domain() {
            germs.push((x, t));
        }
    }
    germs.sort_unstable();
    let arrow_of_germ: BTreeMap<(usize, usize), usize> =
        germs.iter().copied().zip(0..).collect();

    let arrow_count = germs.len();
    let mut source = vec![0usize; arrow_count];
    let mut range = vec![0usize; arrow_count];
    let mut inverse = vec![0usize; arrow_count];
    for (i, &(x, t)) in germs.iter().enumerate() {
        source[i] = x;
        let y = action.apply(t, x).expect("germ domain");
        range[i] = y;
        inverse[i] = arrow_of_germ[&(y, g.inv(t))];
    }
    let unit_arrow: Vec<usize> =
        (0..action.set_size).map(|x| arrow_of_germ[&(x, g.identity)]).collect();

    let mut product = BTreeMap::new();
    for (j, &(x, s)) in germs.iter().enumerate() {
        let y = action.apply(s, x).unwrap();
        for t in g.elements() {
            if action.apply(t, y).is_none() {
                continue;
            }
            let i = arrow_of_germ[&(y, t)];
            // (3-2) guarantees x ∈ X_{(ts)⁻¹}
            let ts = g.mul(t, s);
            let k = *arrow_of_germ
                .get(&(x, ts))
                .ok_or_else(|| Error::Invalid(format!("germ ({x},{ts}) missing")))?;
            product.insert((i, j), k);
        }
    }

    let groupoid =
        Groupoid { unit_count: action.set_size, source, range, inverse, unit_arrow, product };
    let gg = GermGroupoid { groupoid, germs, arrow_of_germ };
    let report = verify_groupoid(&gg.groupoid);
    if !report.is_valid() {
        return Err(Error::Invalid(format!(
            "germ groupoid failed re-verification: {}",
            report.violations[0].axiom
        )));
    }
    Ok(gg)
}

/// Checks the three groupoid axioms plus structural consistency of the
/// source/range/inverse/product tables, with witnesses.
pub fn verify_groupoid(g: &Groupoid) -> ValidityReport {
    let mut report = ValidityReport::default();
    let n = g.arrow_count();

    for a in 0..n {
        let inv = g.inverse[a];
        if inv >= n {
            report.push("inverse out of range", &[a], String::new());
            continue;
        }
        if g.inverse[inv] != a {
            report.push("axiom-1", &[a], "(γ⁻¹)⁻¹ ≠ γ".into());
        }
        if g.source[inv] != g.range[a] || g.range[inv] != g.source[a] {
            report.push("inverse-endpoints", &[a], "s(γ⁻¹) ≠ r(γ)".into());
        }
    }

    // products only on composable pairs, with matching endpoints
    for (&(a, b), &c) in &g.product {
        if g.source[a] != g.range[b] {
            report.push("composability", &[a, b], "product present but r(η) ≠ s(γ)".into());
            continue;
        }
        if g.source[c] != g.source[b] || g.range[c] != g.range[a] {
            report.push("product-endpoints", &[a, b], "s/r of γη wrong".into());
        }
    }
    // all composable pairs must have a product
    for a in 0..n {
        for b in 0..n {
            if g.source[a] == g.range[b] && g.compose(a, b).is_none() {
                report.push("composability", &[a, b], "composable pair with no product".into());
            }
        }
    }

    // axiom 2: associativity (both re-associations defined and equal)
    for (&(a, b), &ab) in &g.product {
        for c in 0..n {
            if let Some(bc) = g.compose(b, c) {
                match (g.compose(ab, c), g.compose(a, bc)) {
                    (Some(l), Some(r)) if l == r => {}
                    _ => {
                        report.push("axiom-2", &[a, b, c], "(γη)ν ≠ γ(ην)".into());
                    }
                }
            }
        }
    }

    // axiom 3: γ⁻¹(γη) = η and (ξγ)γ⁻¹ = ξ; (γ, γ⁻¹) composable
    for a in 0..n {
        let inv = g.inverse[a];
        if g.compose(a, inv).is_none() || g.compose(inv, a).is_none() {
            report.push("axiom-3", &[a], "(γ, γ⁻¹) not composable".into());
            continue;
        }
        for b in 0..n {
            if let Some(ab) = g.compose(a, b) {
                if g.compose(inv, ab) != Some(b) {
                    report.push("axiom-3", &[a, b], "γ⁻¹γη ≠ η".into());
                }
            }
            if let Some(ba) = g.compose(b, a) {
                if g.compose(ba, inv) != Some(b) {
                    report.push("axiom-3", &[b, a], "ξγγ⁻¹ ≠ ξ".into());
                }
            }
        }
    }

    report
}

/// A groupoid homomorphism given by its unit and arrow maps.
#[derive(Debug, Clone)]
pub struct GroupoidHom {
    pub unit_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

pub fn verify_homomorphism(rho: &GroupoidHom, g: &Groupoid, h: &Groupoid) -> ValidityReport {
    let mut report = ValidityReport::default();
    if rho.unit_map.len() != g.unit_count || rho.arrow_map.len() != g.arrow_count() {
        report.push("size", &[], "homomorphism map sizes".into());
        return report;
    }
    for a in 0..g.arrow_count() {
        let fa = rho.arrow_map[a];
        if fa >= h.arrow_count() {
            report.push("range", &[a], "arrow image out of range".into());
            return report;
        }
        if h.source[fa] != rho.unit_map[g.source[a]] || h.range[fa] != rho.unit_map[g.range[a]] {
            report.push("endpoints", &[a], "ρ does not intertwine s/r".into());
        }
        if rho.arrow_map[g.inverse[a]] != h.inverse[fa] {
            report.push("inverse", &[a], "ρ(γ⁻¹) ≠ ρ(γ)⁻¹".into());
        }
    }
    for (&(a, b), &c) in &g.product {
        match h.compose(rho.arrow_map[a], rho.arrow_map[b]) {
            Some(fc) if fc == rho.arrow_map[c] => {}
            _ => report.push("product", &[a, b], "ρ(γη) ≠ ρ(γ)ρ(η)".into()),
        }
    }
    report
}

#[derive(Debug, Clone)]
pub struct SBijectivityReport {
    pub s_bijective: bool,
    pub r_bijective: bool,
    /// units where the source-fiber restriction fails, with the reason
    pub s_witnesses: Vec<(usize, String)>,
    pub r_witnesses: Vec<(usize, String)>,
}

/// Checks per-unit bijectivity of ρ on source fibers and on range fibers,
/// asserting the stated equivalence of the two on this instance.
pub fn s_bijective_check(rho: &GroupoidHom, g: &Groupoid, h: &Groupoid) -> Result<SBijectivityReport> {
    let hom = verify_homomorphism(rho, g, h);
    if !hom.is_valid() {
        return Err(Error::NotVerified("s_bijective_check", "groupoid homomorphism"));
    }
    let fiber_check = |fibers_g: &dyn Fn(usize) -> Vec<usize>,
                       fibers_h: &dyn Fn(usize) -> Vec<usize>|
     -> Vec<(usize, String)> {
        let mut witnesses = Vec::new();
        for u in 0..g.unit_count {
            let gu = fibers_g(u);
            let hu = fibers_h(rho.unit_map[u]);
            let mut image: Vec<usize> = gu.iter().map(|&a| rho.arrow_map[a]).collect();
            image.sort_unstable();
            let before = image.len();
            image.dedup();
            if image.len() != before {
                witnesses.push((u, "not injective on fiber".into()));
                continue;
            }
            let mut target = hu.clone();
            target.sort_unstable();
            if image != target {
                witnesses.push((
                    u,
                    format!("fiber sizes {} vs {}, image misses arrows", before, target.len()),
                ));
            }
        }
        witnesses
    };
    let s_witnesses = fiber_check(&|u| g.source_fiber(u), &|u| h.source_fiber(u));
    let r_witnesses = fiber_check(&|u| g.range_fiber(u), &|u| h.range_fiber(u));
    let s_bijective = s_witnesses.is_empty();
    let r_bijective = r_witnesses.is_empty();
    if s_bijective != r_bijective {
        return Err(Error::Invalid(
            "s-bijective ⟺ r-bijective failed on this instance".into(),
        ));
    }
    Ok(SBijectivityReport { s_bijective, r_bijective, s_witnesses, r_witnesses })
}

/// Normalized counting measures on range fibers, one per unit.
#[derive(Debug, Clone)]
pub struct FiberMeasureSystem {
    /// measures[u] : arrow index ↦ mass, supported on G^u
    pub measures: Vec<BTreeMap<usize, Rat>>,
}

impl FiberMeasureSystem {
    pub fn to_strings(&self) -> Vec<BTreeMap<String, String>> {
        self.measures
            .iter()
            .map(|m| m.iter().map(|(k, v)| (k.to_string(), rat_to_string(v))).collect())
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct CertificateVerification {
    /// max over arrows of ‖γ·m^{s(γ)} − m^{r(γ)}‖; exact rational, must be 0
    pub defect: Rat,
    /// min over units of m^u(G); condition (a)+(b) need exactly 1
    pub total_mass_min: Rat,
    pub total_mass_max: Rat,
}

/// Returns m^u = normalized counting measure on G^u and verifies the
/// transport equality γ·m^{s(γ)} = m^{r(γ)} exactly for every arrow (left
/// multiplication by γ is a bijection G^{s(γ)} → G^{r(γ)}).
pub fn amenability_certificate(g: &Groupoid) -> Result<(FiberMeasureSystem, CertificateVerification)> {
    let mut measures = Vec::with_capacity(g.unit_count);
    for u in 0..g.unit_count {
        let fiber = g.range_fiber(u);
        if fiber.is_empty() {
            return Err(Error::EmptyFiber(u));
        }
        let mass = rat(1, fiber.len() as i64);
        measures.push(fiber.into_iter().map(|a| (a, mass.clone())).collect::<BTreeMap<_, _>>());
    }
    let system = FiberMeasureSystem { measures };
    let verification = verify_fiber_certificate(g, &system)?;
    if verification.defect != rat(0, 1) {
        return Err(Error::Invalid("counting certificate has nonzero defect".into()));
    }
    Ok((system, verification))
}

/// Independent re-verification of any fiber measure system.
pub fn verify_fiber_certificate(
    g: &Groupoid,
    system: &FiberMeasureSystem,
) -> Result<CertificateVerification> {
    if system.measures.len() != g.unit_count {
        return Err(Error::SizeMismatch("one measure per unit".into()));
    }
    let zero = rat(0, 1);
    for (u, m) in system.measures.iter().enumerate() {
        for &a in m.keys() {
            if a >= g.arrow_count() || g.range[a] != u {
                return Err(Error::Invalid(format!("supp(m^{u}) ⊄ G^{u}")));
            }
        }
    }
    let mut total_min: Option<Rat> = None;
    let mut total_max: Option<Rat> = None;
    for m in &system.measures {
        let total: Rat = m.values().cloned().sum();
        total_min = Some(total_min.map_or(total.clone(), |t| t.min(total.clone())));
        total_max = Some(total_max.map_or(total.clone(), |t| t.max(total)));
    }
    // transport defect ‖γ·m^{s(γ)} − m^{r(γ)}‖₁, exact
    let mut defect = zero.clone();
    for gamma in 0..g.arrow_count() {
        let (u, v) = (g.source[gamma], g.range[gamma]);
        let inv = g.inverse[gamma];
        let mut diff = zero.clone();
        // over η ∈ G^v: |m^u(γ⁻¹η) − m^v(η)|
        for eta in g.range_fiber(v) {
            let pulled = g
                .compose(inv, eta)
                .and_then(|a| system.measures[u].get(&a).cloned())
                .unwrap_or_else(|| zero.clone());
            let direct = system.measures[v].get(&eta).cloned().unwrap_or_else(|| zero.clone());
            let d = if pulled >= direct { &pulled - &direct } else { &direct - &pulled };
            diff += d;
        }
        // mass of m^u not reached by left multiplication (bijectivity means none)
        let reached: Vec<Option<usize>> =
            g.range_fiber(v).iter().map(|&eta| g.compose(inv, eta)).collect();
        for (&a, mass) in &system.measures[u] {
            if !reached.contains(&Some(a)) {
                diff += mass.clone();
            }
        }
        if diff > defect {
            defect = diff;
        }
    }
    Ok(CertificateVerification {
        defect,
        total_mass_min: total_min.unwrap_or_else(rat_one),
        total_mass_max: total_max.unwrap_or_else(rat_one),
    })
}

/// Pulls a certificate on ℋ back along an s-bijective morphism ρ : 𝒢 → ℋ
/// (the r-fiber bijections transport the measures), then re-verifies on 𝒢.
pub fn pullback_certificate(
    rho: &GroupoidHom,
    g: &Groupoid,
    h: &Groupoid,
    cert: &FiberMeasureSystem,
) -> Result<(FiberMeasureSystem, CertificateVerification)> {
    let sbij = s_bijective_check(rho, g, h)?;
    if !sbij.s_bijective {
        return Err(Error::NotVerified("pullback_certificate", "s-bijective morphism"));
    }
    let mut measures = Vec::with_capacity(g.unit_count);
    for u in 0..g.unit_count {
        let hu = rho.unit_map[u];
        let mut m = BTreeMap::new();
        for a in g.range_fiber(u) {
            if let Some(mass) = cert.measures[hu].get(&rho.arrow_map[a]) {
                m.insert(a, mass.clone());
            }
        }
        measures.push(m);
    }
    let system = FiberMeasureSystem { measures };
    let verification = verify_fiber_certificate(g, &system)?;
    Ok((system, verification))
}

/// The germ-groupoid quotient morphism (x,s) ↦ ([x],s) onto the factor's
/// germ groupoid, when the factor action is itself valid.
pub fn quotient_morphism(
    action: &PartialAction,
    factor: &crate::envelope::FactorSpace,
    gg: &GermGroupoid,
    hh: &GermGroupoid,
) -> Result<GroupoidHom> {
    if !factor.validity.is_valid() {
        return Err(Error::NotVerified("quotient_morphism", "factor action"));
    }
    let _ = action;
    let unit_map = factor.class_of.clone();
    let arrow_map = gg
        .germs
        .iter()
        .map(|&(x, s)| {
            hh.arrow_of_germ
                .get(&(factor.class_of[x], s))
                .copied()
                .ok_or_else(|| Error::Invalid(format!("quotient germ ([{x}],{s}) missing")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupoidHom { unit_map, arrow_map })
}
