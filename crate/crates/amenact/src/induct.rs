//! Induced partial representations from a subgroup, in both flavors:
//! Ind on the full section space Ė ≅ E^J and ind on the strong space
//! Ė⁰ ≅ E₀^J with E₀ = ∩_{t∈H} E_t. Includes the ξ_{f,v} section
//! constructions, the discrete Urysohn feasibility check, weak containment
//! machinery, and the continuity-of-induction harnesses.
//!
//! Sections are carried by their transversal coordinates: ξ(xt) := π_{t⁻¹}ξ(x)
//! reconstructs the rest, and the covariance π_tξ(st) = p_tξ(s) for all
//! s ∈ G follows from the axiom π_tπ_{t⁻¹}π_s = π_tπ_{t⁻¹s} (verified per
//! instance, not assumed). The inner product is the coordinate sum over J
//! (counting measure on G/H, cocycle σ_μ ≡ 1).

use std::sync::Arc;

use crate::cx::{cr, nullspace, orthonormal_span, projection_onto_span, smallest_eigenpair, CMat};
use crate::error::{Error, Result};
use crate::group::{transversal_select, FiniteGroup, Subgroup, Transversal};
use crate::prep::{
    rep_reiter_solve, subgroup_as_group, tensor_with_conjugate, verify_partial_rep, PartialRep,
    ReiterFlavor,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InduceFlavor {
    /// weak section space Ė ≅ E^J
    Ind,
    /// strong section space Ė⁰ ≅ E₀^J
    IndStrong,
}

/// Shared coordinate data of an induction problem.
#[derive(Debug, Clone)]
pub struct InducedSpace {
    pub g_group: Arc<FiniteGroup>,
    pub sub: Subgroup,
    pub transversal: Transversal,
    /// π over the reindexed subgroup group
    pub base: PartialRep,
    /// G-labels of the subgroup elements, aligned with base.group indices
    pub h_elems: Vec<usize>,
    /// orthonormal basis of E₀ = ∩_{t∈H} E_t as columns
    pub e0_basis: Vec<CMat>,
}

impl InducedSpace {
    pub fn new(g_group: Arc<FiniteGroup>, sub: Subgroup, base: PartialRep) -> Result<Self> {
        let (h_group, h_elems) = subgroup_as_group(&g_group, &sub)?;
        if h_group.table != base.group.table {
            return Err(Error::Invalid(
                "base representation must live on the reindexed subgroup".into(),
            ));
        }
        if !verify_partial_rep(&base).is_valid() {
            return Err(Error::NotVerified("induce", "base partial representation"));
        }
        let transversal = transversal_select(&g_group, &sub);
        // E₀ = {v : p_t v = v for all t ∈ H}
        let d = base.dim;
        let mut rows: Vec<Vec<crate::cx::C>> = Vec::new();
        for t in 0..base.group.order {
            let pt = base.p(t);
            for r in 0..d {
                let mut row = Vec::with_capacity(d);
                for c in 0..d {
                    let idd = if r == c { cr(1.0) } else { cr(0.0) };
                    row.push(pt[(r, c)] - idd);
                }
                rows.push(row);
            }
        }
        let stacked = CMat::from_rows(rows);
        let e0_basis = orthonormal_span(&nullspace(&stacked, 1e-10), 1e-10);
        Ok(InducedSpace { g_group, sub, transversal, base, h_elems, e0_basis })
    }

    pub fn coset_count(&self) -> usize {
        self.transversal.reps.len()
    }

    pub fn dim_weak(&self) -> usize {
        self.coset_count() * self.base.dim
    }

    pub fn dim_strong(&self) -> usize {
        self.coset_count() * self.e0_basis.len()
    }

    /// H-index of a G-element known to lie in H.
    pub fn h_index(&self, g_elem: usize) -> usize {
        self.h_elems.iter().position(|&h| h == g_elem).expect("element of H")
    }

    /// g = reps[j]·h, returning (j, H-index of h).
    pub fn decompose(&self, g_elem: usize) -> (usize, usize) {
        let (j, h) = self.transversal.decompose(&self.g_group, &self.sub, g_elem);
        (j, self.h_index(h))
    }

    /// Evaluates a coordinate section at an arbitrary group element:
    /// ξ(x_j·h) = π_{h⁻¹} ξ(x_j).
    pub fn eval_section(&self, coords: &CMat, g_elem: usize) -> CMat {
        let d = self.base.dim;
        let (j, h) = self.decompose(g_elem);
        let mut slot = CMat::zeros(d, 1);
        for i in 0..d {
            slot[(i, 0)] = coords[(j * d + i, 0)];
        }
        self.base.pi[self.base.group.inv(h)].mul(&slot)
    }

    /// The translation operator L_s on weak coordinates:
    /// (L_sξ)(x_j) = ξ(s⁻¹x_j) = π_{w⁻¹} ξ(x_{j''}).
    pub fn translation(&self, s: usize) -> CMat {
        let d = self.base.dim;
        let nj = self.coset_count();
        let mut m = CMat::zeros(nj * d, nj * d);
        for j in 0..nj {
            let g = self.g_group.mul(self.g_group.inv(s), self.transversal.reps[j]);
            let (j2, w) = self.decompose(g);
            let block = &self.base.pi[self.base.group.inv(w)];
            for r in 0..d {
                for c in 0..d {
                    m[(j * d + r, j2 * d + c)] = block[(r, c)];
                }
            }
        }
        m
    }

    /// Orthogonal projection onto Ė_s = {ξ : π_{t⁻¹u⁻¹}ξ(x′) ∈ E_{t⁻¹}
    /// ∀x∈J, t∈H, where s·x = x′u}. Block diagonal over slots.
    pub fn domain_projection(&self, s: usize) -> CMat {
        let d = self.base.dim;
        let nj = self.coset_count();
        let hg = &self.base.group;
        let mut proj = CMat::zeros(nj * d, nj * d);
        for j in 0..nj {
            let g = self.g_group.mul(s, self.transversal.reps[j]);
            let (slot, u) = self.decompose(g);
            // constraints on ξ(x_{slot}): (I − p_{t⁻¹}) π_{t⁻¹u⁻¹} v = 0
            let mut rows: Vec<Vec<crate::cx::C>> = Vec::new();
            for t in 0..hg.order {
                let tinv = hg.inv(t);
                let elem = hg.mul(tinv, hg.inv(u));
                let p = self.base.p(tinv);
                let block = {
                    let id = CMat::identity(d);
                    id.sub(&p).mul(&self.base.pi[elem])
                };
                for r in 0..d {
                    rows.push((0..d).map(|c| block[(r, c)]).collect());
                }
            }
            let stacked = CMat::from_rows(rows);
            let basis = nullspace(&stacked, 1e-10);
            let p_slot = projection_onto_span(&basis, d, 1e-10);
            for r in 0..d {
                for c in 0..d {
                    proj[(slot * d + r, slot * d + c)] = p_slot[(r, c)];
                }
            }
        }
        proj
    }

    /// Embedding Ė⁰ ↪ Ė (block diagonal of the E₀ basis).
    pub fn strong_embedding(&self) -> CMat {
        let d = self.base.dim;
        let k0 = self.e0_basis.len();
        let nj = self.coset_count();
        let mut b = CMat::zeros(nj * d, nj * k0);
        for j in 0..nj {
            for (c, col) in self.e0_basis.iter().enumerate() {
                for r in 0..d {
                    b[(j * d + r, j * k0 + c)] = col[(r, 0)];
                }
            }
        }
        b
    }
}

#[derive(Debug, Clone)]
pub struct InducedRep {
    pub space: InducedSpace,
    pub flavor: InduceFlavor,
    pub rep: PartialRep,
}

/// Builds Ind^G_H π or ind^G_H π. For Ind the operator at s is L_s P_{s⁻¹};
/// for ind the domain is {ξ ∈ Ė⁰ : L_sξ ∈ Ė⁰} with L_s there and zero on
/// the orthocomplement. The output family always goes back through
/// verify_partial_rep.
pub fn induce(
    g_group: Arc<FiniteGroup>,
    sub: &Subgroup,
    base: &PartialRep,
    flavor: InduceFlavor,
) -> Result<InducedRep> {
    let space = InducedSpace::new(g_group.clone(), sub.clone(), base.clone())?;
    let matrices: Vec<CMat> = match flavor {
        InduceFlavor::Ind => g_group
            .elements()
            .map(|s| {
                let l = space.translation(s);
                let p = space.domain_projection(g_group.inv(s));
                l.mul(&p)
            })
            .collect(),
        InduceFlavor::IndStrong => {
            let b = space.strong_embedding();
            if space.e0_basis.is_empty() {
                // E₀ = 0: nothing to induce; report the degenerate zero rep
                let pi = g_group
                    .elements()
                    .map(|s| {
                        if s == g_group.identity {
                            CMat::identity(1)
                        } else {
                            CMat::zeros(1, 1)
                        }
                    })
                    .collect();
                let rep = PartialRep::new(g_group.clone(), pi)?;
                return Ok(InducedRep { space, flavor, rep });
            }
            let bh = b.adjoint();
            let dim0 = space.dim_strong();
            let full = space.dim_weak();
            let complement = CMat::identity(full).sub(&b.mul(&bh));
            g_group
                .elements()
                .map(|s| {
                    let l = space.translation(s);
                    // D_s = {v : (I − BB^H) L_s B v = 0}
                    let constraint = complement.mul(&l).mul(&b);
                    let basis = nullspace(&constraint, 1e-10);
                    let p = projection_onto_span(&basis, dim0, 1e-10);
                    bh.mul(&l).mul(&b).mul(&p)
                })
                .collect()
        }
    };
    let rep = PartialRep::new(g_group, matrices)?;
    let report = verify_partial_rep(&rep);
    if !report.is_valid() {
        return Err(Error::Invalid(format!(
            "induced family failed the partial-representation axioms (max residual {})",
            report.max_residual
        )));
    }
    Ok(InducedRep { space, flavor, rep })
}

/// Independent construction of the classical induced representation for a
/// global base π (no domain projections): block (j, j'') = π(w⁻¹) where
/// s⁻¹ x_j = x_{j''} w. Used as the comparison oracle.
pub fn classical_induced(
    g_group: Arc<FiniteGroup>,
    sub: &Subgroup,
    base: &PartialRep,
) -> Result<PartialRep> {
    let (h_group, h_elems) = subgroup_as_group(&g_group, sub)?;
    if h_group.table != base.group.table {
        return Err(Error::Invalid("base must live on the reindexed subgroup".into()));
    }
    let tr = transversal_select(&g_group, sub);
    let d = base.dim;
    let nj = tr.reps.len();
    let h_index = |h: usize| h_elems.iter().position(|&e| e == h).expect("in H");
    let pi = g_group
        .elements()
        .map(|s| {
            let mut m = CMat::zeros(nj * d, nj * d);
            for j in 0..nj {
                let g = g_group.mul(g_group.inv(s), tr.reps[j]);
                let (j2, w) = tr.decompose(&g_group, sub, g);
                let block = &base.pi[h_group.inv(h_index(w))];
                for r in 0..d {
                    for c in 0..d {
                        m[(j * d + r, j2 * d + c)] = block[(r, c)];
                    }
                }
            }
            m
        })
        .collect();
    PartialRep::new(g_group, pi)
}

/// The L-cocycle L_{s₁}L_{s₂} = L_{s₁s₂} on the coordinate model, exact for
/// global bases (for partial bases the composition only extends through the
/// domains, which is what the partial-representation axioms certify).
pub fn translation_cocycle_residual(space: &InducedSpace) -> f64 {
    let g = &space.g_group;
    let mut worst: f64 = 0.0;
    for s1 in g.elements() {
        for s2 in g.elements() {
            let lhs = space.translation(s1).mul(&space.translation(s2));
            let rhs = space.translation(g.mul(s1, s2));
            worst = worst.max(lhs.sub(&rhs).max_abs());
        }
    }
    worst
}

/// H_v = {(u,t) ∈ H×H : π_u(v) ∈ E_{t⁻¹}} in H-indices.
pub fn h_v_compute(base: &PartialRep, v: &CMat) -> Vec<(usize, usize)> {
    let hg = &base.group;
    let mut out = Vec::new();
    for u in hg.elements() {
        let pv = base.pi[u].mul(v);
        for t in hg.elements() {
            let p = base.p(hg.inv(t));
            if p.mul(&pv).sub(&pv).max_abs() <= base.tol {
                out.push((u, t));
            }
        }
    }
    out
}

/// Forbidden support for C^v_c(G): the points x·t·u and x·u for x ∈ J and
/// (u,t) ∈ H^v (complement of H_v), in G-labels.
pub fn forbidden_support(space: &InducedSpace, v: &CMat) -> Vec<usize> {
    let hv = h_v_compute(&space.base, v);
    let hg = &space.base.group;
    let mut forbidden = vec![false; space.g_group.order];
    for u in hg.elements() {
        for t in hg.elements() {
            if hv.contains(&(u, t)) {
                continue;
            }
            let gu = space.h_elems[u];
            let gt = space.h_elems[t];
            for &x in &space.transversal.reps {
                forbidden[space.g_group.mul(space.g_group.mul(x, gt), gu)] = true;
                forbidden[space.g_group.mul(x, gu)] = true;
            }
        }
    }
    (0..space.g_group.order).filter(|&g| forbidden[g]).collect()
}

#[derive(Debug, Clone)]
pub struct SectionReport {
    /// covariance π_tξ(st) = p_tξ(s) over all s ∈ G, t ∈ H
    pub covariance_residual: f64,
    /// ξ(xt) ∈ E_{t⁻¹}
    pub membership_residual: f64,
    /// strong condition π_tξ(xt) = ξ(x)
    pub strong_residual: f64,
}

/// ξ_{f,v}(s) = Σ_{t∈H} f(st) π_t(v), built from f ∈ C^v_c(G); membership
/// in F⁰ is verified by the three section computations.
pub fn xi_f_v(space: &InducedSpace, f: &[crate::cx::C], v: &CMat) -> Result<(CMat, SectionReport)> {
    if f.len() != space.g_group.order {
        return Err(Error::SizeMismatch("f must be a function on G".into()));
    }
    // vanishing constraints
    let hv = h_v_compute(&space.base, v);
    let hg = &space.base.group;
    for u in hg.elements() {
        for t in hg.elements() {
            if hv.contains(&(u, t)) {
                continue;
            }
            let gu = space.h_elems[u];
            let gt = space.h_elems[t];
            for (xi, &x) in space.transversal.reps.iter().enumerate() {
                let a = space.g_group.mul(space.g_group.mul(x, gt), gu);
                let b = space.g_group.mul(x, gu);
                if f[a].norm() > 1e-12 || f[b].norm() > 1e-12 {
                    return Err(Error::ForbiddenSupport { x: xi, u, t });
                }
            }
        }
    }
    // full evaluation ξ(s) for every s ∈ G
    let d = space.base.dim;
    let evaluate = |s: usize| -> CMat {
        let mut acc = CMat::zeros(d, 1);
        for t in hg.elements() {
            let gt = space.h_elems[t];
            let st = space.g_group.mul(s, gt);
            if f[st].norm() == 0.0 {
                continue;
            }
            acc = acc.add(&space.base.pi[t].mul(v).scale(f[st]));
        }
        acc
    };
    let mut report = SectionReport {
        covariance_residual: 0.0,
        membership_residual: 0.0,
        strong_residual: 0.0,
    };
    for s in space.g_group.elements() {
        for t in hg.elements() {
            let gt = space.h_elems[t];
            let lhs = space.base.pi[t].mul(&evaluate(space.g_group.mul(s, gt)));
            let rhs = space.base.p(t).mul(&evaluate(s));
            report.covariance_residual = report.covariance_residual.max(lhs.sub(&rhs).max_abs());
        }
    }
    for &x in &space.transversal.reps {
        let xval = evaluate(x);
        for t in hg.elements() {
            let gt = space.h_elems[t];
            let xt = space.g_group.mul(x, gt);
            let val = evaluate(xt);
            // membership in E_{t⁻¹}
            let p = space.base.p(hg.inv(t));
            report.membership_residual =
                report.membership_residual.max(p.mul(&val).sub(&val).max_abs());
            // strong condition
            let lhs = space.base.pi[t].mul(&val);
            report.strong_residual = report.strong_residual.max(lhs.sub(&xval).max_abs());
        }
    }
    // Ė⁰ coordinates
    let k0 = space.e0_basis.len();
    let nj = space.coset_count();
    let mut coords = CMat::zeros(nj * k0, 1);
    for (j, &x) in space.transversal.reps.iter().enumerate() {
        let val = evaluate(x);
        for (c, b) in space.e0_basis.iter().enumerate() {
            coords[(j * k0 + c, 0)] = val.dot(b);
        }
    }
    Ok((coords, report))
}

#[derive(Debug, Clone)]
pub enum UrysohnOutcome {
    /// indicator-style partition: f_i values on G (exact 0/1 here)
    Feasible { functions: Vec<Vec<u8>> },
    /// a point of K covered only by forbidden positions
    Infeasible { witness: usize },
}

/// Discrete Urysohn feasibility: f_i ≥ 0 supported in U_i minus the
/// C^{v_i}-forbidden set with Σf_i = 1 on K and ≤ 1 everywhere. Pointwise
/// assignment solves the LP exactly: feasible iff every point of K has an
/// admissible cover.
pub fn urysohn_check_discrete(
    space: &InducedSpace,
    k_set: &[usize],
    covers: &[Vec<usize>],
    vs: &[CMat],
) -> Result<UrysohnOutcome> {
    if covers.len() != vs.len() {
        return Err(Error::SizeMismatch("one v per cover".into()));
    }
    let n = space.g_group.order;
    let forbidden: Vec<Vec<bool>> = vs
        .iter()
        .map(|v| {
            let mut mask = vec![false; n];
            for g in forbidden_support(space, v) {
                mask[g] = true;
            }
            mask
        })
        .collect();
    let in_cover: Vec<Vec<bool>> = covers
        .iter()
        .map(|u| {
            let mut mask = vec![false; n];
            for &g in u {
                mask[g] = true;
            }
            mask
        })
        .collect();
    let mut functions = vec![vec![0u8; n]; covers.len()];
    for &g in k_set {
        let admissible = (0..covers.len()).find(|&i| in_cover[i][g] && !forbidden[i][g]);
        match admissible {
            Some(i) => functions[i][g] = 1,
            None => return Ok(UrysohnOutcome::Infeasible { witness: g }),
        }
    }
    Ok(UrysohnOutcome::Feasible { functions })
}

#[derive(Debug, Clone)]
pub struct TotalSetReport {
    pub spanned_rank: usize,
    pub dim_strong: usize,
    pub pass: bool,
}

/// Rank of span{ξ_{f,v}} over indicator f = δ_g (g outside the forbidden
/// set of v) and v over the standard basis of E, against dim Ė⁰.
pub fn total_set_check(space: &InducedSpace) -> TotalSetReport {
    let d = space.base.dim;
    let n = space.g_group.order;
    let mut vectors: Vec<CMat> = Vec::new();
    for i in 0..d {
        let mut v = CMat::zeros(d, 1);
        v[(i, 0)] = cr(1.0);
        let mut forbidden = vec![false; n];
        for g in forbidden_support(space, &v) {
            forbidden[g] = true;
        }
        for g in 0..n {
            if forbidden[g] {
                continue;
            }
            let mut f = vec![cr(0.0); n];
            f[g] = cr(1.0);
            if let Ok((coords, report)) = xi_f_v(space, &f, &v) {
                debug_assert!(report.strong_residual < 1e-8);
                if coords.max_abs() > 1e-12 {
                    vectors.push(coords);
                }
            }
        }
    }
    let spanned_rank = orthonormal_span(&vectors, 1e-9).len();
    let dim_strong = space.dim_strong();
    TotalSetReport { spanned_rank, dim_strong, pass: spanned_rank == dim_strong }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContainFlavor {
    Plain,
    Strong,
}

#[derive(Debug, Clone)]
pub struct WeakContainmentWitness {
    pub target: CMat,
    pub s_matrix: CMat,
    /// |⟨π_tξ,ξ⟩ − Tr(σ_tS)| per t ∈ K, recomputed from S
    pub errors: Vec<(usize, f64)>,
    pub max_error: f64,
    /// Σ_i ‖η_i − σ_{t⁻¹}σ_t η_i‖ per t (strong flavor only)
    pub strong_penalties: Option<Vec<(usize, f64)>>,
    pub converged: bool,
}

/// Approximates the coefficient ⟨π_tξ,ξ⟩ of each probe ξ by Tr(σ_t S) for a
/// PSD S on E_σ, by projected gradient with eigenvalue clipping.
pub fn weak_contains(
    pi: &PartialRep,
    sigma: &PartialRep,
    k: &[usize],
    eps: f64,
    flavor: ContainFlavor,
    seed: u64,
) -> Result<Vec<WeakContainmentWitness>> {
    if pi.group.table != sigma.group.table {
        return Err(Error::Invalid("weak containment needs the same group".into()));
    }
    let mut rng = crate::rng::SplitMix64::new(seed);
    let mut targets: Vec<CMat> = (0..pi.dim)
        .map(|i| {
            let mut v = CMat::zeros(pi.dim, 1);
            v[(i, 0)] = cr(1.0);
            v
        })
        .collect();
    for _ in 0..8 {
        let mut v = CMat::zeros(pi.dim, 1);
        for i in 0..pi.dim {
            v[(i, 0)] = crate::cx::c(rng.f64() - 0.5, rng.f64() - 0.5);
        }
        let norm = v.fro_norm();
        if norm > 1e-12 {
            targets.push(v.scale(cr(1.0 / norm)));
        }
    }
    let mut out = Vec::with_capacity(targets.len());
    for xi in targets {
        let coeffs: Vec<crate::cx::C> = k.iter().map(|&t| pi.pi[t].mul(&xi).dot(&xi)).collect();
        // seed S: maximally mixed
        let ds = sigma.dim;
        let mut s = CMat::identity(ds).scale(cr(1.0 / ds as f64));
        let step = 0.5 / (k.len() as f64).max(1.0);
        let mut converged = false;
        for _ in 0..500 {
            // gradient of Σ_t |c_t − Tr(σ_t S)|² plus the strong penalty
            let mut grad = CMat::zeros(ds, ds);
            let mut max_err: f64 = 0.0;
            for (idx, &t) in k.iter().enumerate() {
                let tr: crate::cx::C = sigma.pi[t].mul(&s).trace();
                let err = coeffs[idx] - tr;
                max_err = max_err.max(err.norm());
                grad = grad.add(&sigma.pi[t].adjoint().scale(err));
            }
            if matches!(flavor, ContainFlavor::Strong) {
                for &t in k {
                    let a =
                        CMat::identity(ds).sub(&sigma.pi[sigma.group.inv(t)].mul(&sigma.pi[t]));
                    // penalty Tr(A S A^H): gradient A^H A
                    grad = grad.sub(&a.adjoint().mul(&a).mul(&s).scale(cr(0.2)));
                }
            }
            if max_err <= eps {
                converged = true;
                break;
            }
            s = s.add(&grad.scale(cr(step)));
            s = crate::cx::psd_project(&s.hermitian_part());
        }
        let errors: Vec<(usize, f64)> = k
            .iter()
            .zip(&coeffs)
            .map(|(&t, &c)| {
                let tr = sigma.pi[t].mul(&s).trace();
                (t, (c - tr).norm())
            })
            .collect();
        let max_error = errors.iter().map(|&(_, e)| e).fold(0.0f64, f64::max);
        let strong_penalties = if matches!(flavor, ContainFlavor::Strong) {
            // factor S = Σ η_i η_i^*
            let (vals, vecs) = crate::cx::hermitian_eigen(&s.hermitian_part());
            let etas: Vec<CMat> = (0..ds)
                .filter(|&j| vals[j] > 1e-12)
                .map(|j| vecs.column(j).scale(cr(vals[j].sqrt())))
                .collect();
            Some(
                k.iter()
                    .map(|&t| {
                        let a = CMat::identity(ds)
                            .sub(&sigma.pi[sigma.group.inv(t)].mul(&sigma.pi[t]));
                        let total: f64 = etas.iter().map(|eta| a.mul(eta).fro_norm()).sum();
                        (t, total)
                    })
                    .collect(),
            )
        } else {
            None
        };
        out.push(WeakContainmentWitness {
            target: xi,
            s_matrix: s,
            errors,
            max_error,
            strong_penalties,
            converged,
        });
    }
    Ok(out)
}

/// 1_G ⪯ π: minimize Σ_{t∈K} ‖π_tξ − ξ‖² over the unit sphere (smallest
/// eigenpair of Σ(π_t − I)^H(π_t − I)), reporting both the ℓ²-aggregate and
/// the exact max defect, plus the inequality ½‖π_tξ−ξ‖² ≤ |1 − ⟨π_tξ,ξ⟩|.
#[derive(Debug, Clone)]
pub struct TrivialContainment {
    pub vector: CMat,
    pub aggregate: f64,
    pub max_defect: f64,
    pub halfsq_inequality_ok: bool,
}

pub fn trivial_weakly_contained(pi: &PartialRep, k: &[usize]) -> TrivialContainment {
    let d = pi.dim;
    let id = CMat::identity(d);
    let mut h = CMat::zeros(d, d);
    for &t in k {
        let a = pi.pi[t].sub(&id);
        h = h.add(&a.adjoint().mul(&a));
    }
    let (lambda, xi) = smallest_eigenpair(&h);
    let max_defect =
        k.iter().map(|&t| pi.pi[t].mul(&xi).sub(&xi).fro_norm()).fold(0.0f64, f64::max);
    let halfsq_inequality_ok = k.iter().all(|&t| {
        let lhs = 0.5 * pi.pi[t].mul(&xi).sub(&xi).fro_norm().powi(2);
        let rhs = (cr(1.0) - pi.pi[t].mul(&xi).dot(&xi)).norm();
        lhs <= rhs + 1e-9
    });
    TrivialContainment {
        vector: xi,
        aggregate: lambda.max(0.0).sqrt(),
        max_defect,
        halfsq_inequality_ok,
    }
}

#[derive(Debug, Clone)]
pub struct WcreiAudit {
    pub ptilde2_defect: f64,
    pub tensor_trivial_defect: f64,
    /// (ii)⇒(i): |1−⟨(π⊗π̄)_t vecT, vecT⟩| ≤ ‖π_tTπ_{t⁻¹}−T‖₂ per t
    pub forward_ok: bool,
    /// (i)⇒(ii): ½‖π_tS π_{t⁻¹}−S‖₂² ≤ |1−⟨(π⊗π̄)_tW,W⟩| per t
    pub backward_ok: bool,
    pub star_closed: bool,
}

/// Audits both directions of the weak-containment ⟺ (P̃₂) equivalence through
/// the proof's two inequalities, on the computed optimizers.
pub fn wcrei_audit(pi: &PartialRep, k: &[usize], tol: f64) -> Result<WcreiAudit> {
    let star_closed = pi.is_star_closed();
    let tens = tensor_with_conjugate(pi)?;
    let p2 = rep_reiter_solve(pi, k, 2, ReiterFlavor::Plain)?;
    let triv = trivial_weakly_contained(&tens, k);

    // forward: from the P̃₂ optimizer T
    let t_vec = p2.t_matrix.vec();
    let forward_ok = k.iter().all(|&t| {
        let coeff = tens.pi[t].mul(&t_vec).dot(&t_vec);
        let lhs = (cr(1.0) - coeff).norm();
        let rhs = pi.pi[t]
            .mul(&p2.t_matrix)
            .mul(&pi.pi[pi.group.inv(t)])
            .sub(&p2.t_matrix)
            .fro_norm();
        lhs <= rhs + tol
    });

    // backward: from the tensor-containment optimizer W
    let s_w = CMat::unvec(&triv.vector, pi.dim, pi.dim);
    let backward_ok = k.iter().all(|&t| {
        let lhs = 0.5
            * pi.pi[t]
                .mul(&s_w)
                .mul(&pi.pi[pi.group.inv(t)])
                .sub(&s_w)
                .fro_norm()
                .powi(2);
        let coeff = tens.pi[t].mul(&triv.vector).dot(&triv.vector);
        let rhs = (cr(1.0) - coeff).norm();
        lhs <= rhs + tol
    });

    Ok(WcreiAudit {
        ptilde2_defect: p2.achieved,
        tensor_trivial_defect: triv.max_defect,
        forward_ok,
        backward_ok,
        star_closed,
    })
}

#[derive(Debug, Clone)]
pub struct ResIndReport {
    /// residual of isometry of U on the designated probe span
    pub isometry_residual: f64,
    /// residual of (ind τ)_s U = U (σ_s ⊗ (ind π)_s) on probes
    pub intertwine_residual: f64,
    /// residual of U landing inside Ė⁰_τ coordinates
    pub membership_residual: f64,
    pub probes: usize,
}

/// The explicit unitary of ind(Res σ ⊗ π) ≅ σ ⊗ ind π:
/// U(η⊗ξ)(s) = 1_{A_η}(s) σ_{s⁻¹}(η) ⊗ ξ(s), checked on elementary probes
/// η (basis of E_σ) ⊗ ξ (slot-supported Ė⁰_π basis) whose supports sit
/// inside A_η·H.
pub fn resind_check(
    sigma: &PartialRep,
    g_group: Arc<FiniteGroup>,
    sub: &Subgroup,
    pi_h: &PartialRep,
) -> Result<ResIndReport> {
    if sigma.group.table != g_group.table {
        return Err(Error::Invalid("σ must be a representation of G".into()));
    }
    // τ = Res_H σ ⊗ π on E_σ ⊗ E_π over the reindexed subgroup
    let res_sigma = crate::prep::restrict_to_subgroup(sigma, sub)?;
    let tau = crate::prep::tensor(&res_sigma, pi_h)?;
    let left = induce(g_group.clone(), sub, &tau, InduceFlavor::IndStrong)?;
    let right_ind = induce(g_group.clone(), sub, pi_h, InduceFlavor::IndStrong)?;

    let ds = sigma.dim;
    let k0 = right_ind.space.e0_basis.len();
    let k0t = left.space.e0_basis.len();
    let nj = right_ind.space.coset_count();
    let dim_tau = tau.dim;

    let mut isometry_residual: f64 = 0.0;
    let mut intertwine_residual: f64 = 0.0;
    let mut membership_residual: f64 = 0.0;
    let mut probes = 0usize;

    // elementary probes: η = e_a, ξ = E₀π-basis b in slot j with x_jH ⊆ A_η
    for a in 0..ds {
        let mut eta = CMat::zeros(ds, 1);
        eta[(a, 0)] = cr(1.0);
        // A_η = {s : p^σ_s η = η}
        let a_mask: Vec<bool> = g_group
            .elements()
            .map(|s| sigma.p(s).mul(&eta).sub(&eta).max_abs() <= sigma.tol)
            .collect();
        for j in 0..nj {
            let coset_ok = (0..right_ind.space.base.group.order).all(|h| {
                let gh = right_ind.space.h_elems[h];
                a_mask[g_group.mul(right_ind.space.transversal.reps[j], gh)]
            });
            if !coset_ok {
                continue;
            }
            for b_idx in 0..k0 {
                probes += 1;
                let dim_in = ds * nj * k0;
                let mut zeta = CMat::zeros(dim_in, 1);
                zeta[(a * nj * k0 + j * k0 + b_idx, 0)] = cr(1.0);

                // U(ζ) in Ė⁰_τ coordinates: slot x_j carries σ_{x_j⁻¹}η ⊗ ξ(x_j)
                let xj = left.space.transversal.reps[j];
                let s_inv = g_group.inv(xj);
                let moved_eta = sigma.pi[s_inv].mul(&eta);
                let xi_val = &right_ind.space.e0_basis[b_idx];
                let tensor_val = {
                    let mut v = CMat::zeros(dim_tau, 1);
                    for r in 0..ds {
                        for c in 0..pi_h.dim {
                            v[(r * pi_h.dim + c, 0)] = moved_eta[(r, 0)] * xi_val[(c, 0)];
                        }
                    }
                    v
                };
                let mut coords = CMat::zeros(nj * k0t, 1);
                let mut reconstructed = CMat::zeros(dim_tau, 1);
                for (c, basis_vec) in left.space.e0_basis.iter().enumerate() {
                    let coeff = tensor_val.dot(basis_vec);
                    coords[(j * k0t + c, 0)] = coeff;
                    reconstructed = reconstructed.add(&basis_vec.scale(coeff));
                }
                membership_residual =
                    membership_residual.max(reconstructed.sub(&tensor_val).max_abs());
                isometry_residual =
                    isometry_residual.max((coords.fro_norm() - zeta.fro_norm()).abs());

                // intertwining: (ind τ)_s U(ζ) vs U((σ_s ⊗ (ind π)_s) ζ)
                for s in g_group.elements() {
                    let lhs = left.rep.pi[s].mul(&coords);
                    let eta_s = sigma.pi[s].mul(&eta);
                    let mut xi_coords = CMat::zeros(nj * k0, 1);
                    xi_coords[(j * k0 + b_idx, 0)] = cr(1.0);
                    let xi_moved = right_ind.rep.pi[s].mul(&xi_coords);
                    let mut rhs = CMat::zeros(nj * k0t, 1);
                    for j2 in 0..nj {
                        let xj2 = left.space.transversal.reps[j2];
                        let moved = sigma.pi[g_group.inv(xj2)].mul(&eta_s);
                        let mut xi_slot = CMat::zeros(pi_h.dim, 1);
                        for b2 in 0..k0 {
                            let coeff = xi_moved[(j2 * k0 + b2, 0)];
                            if coeff.norm() == 0.0 {
                                continue;
                            }
                            xi_slot = xi_slot.add(&right_ind.space.e0_basis[b2].scale(coeff));
                        }
                        let mut tens_slot = CMat::zeros(dim_tau, 1);
                        for r in 0..ds {
                            for c in 0..pi_h.dim {
                                tens_slot[(r * pi_h.dim + c, 0)] =
                                    moved[(r, 0)] * xi_slot[(c, 0)];
                            }
                        }
                        for (c, basis_vec) in left.space.e0_basis.iter().enumerate() {
                            rhs[(j2 * k0t + c, 0)] = tens_slot.dot(basis_vec);
                        }
                    }
                    intertwine_residual = intertwine_residual.max(lhs.sub(&rhs).max_abs());
                }
            }
        }
    }
    Ok(ResIndReport { isometry_residual, intertwine_residual, membership_residual, probes })
}

#[derive(Debug, Clone)]
pub struct InductionContinuityReport {
    /// containment error of π in ρ before induction (constructive witness)
    pub before_error: f64,
    /// containment error of ind π in ind ρ via the pushed-forward witness
    pub after_error: f64,
    /// quasi-regular Eymard identity residual
    /// (ind 1_H)_s T_φ (ind 1_H)_{s⁻¹} = P_s T_{L_sφ}
    pub eymard_identity_residual: f64,
    /// invariance residual of the uniform mean on ℓ∞(G/H)
    pub uniform_mean_residual: f64,
}

/// Constructive continuity-of-induction check for π a subrepresentation of
/// ρ (inclusion v: E_π ↪ E_ρ), plus the quasi-regular/Eymard pipeline.
pub fn induction_continuity_harness(
    g_group: Arc<FiniteGroup>,
    sub: &Subgroup,
    pi_h: &PartialRep,
    rho_h: &PartialRep,
    inclusion: &CMat,
) -> Result<InductionContinuityReport> {
    // before: coefficients of π match coefficients of ρ at included vectors
    let mut before_error: f64 = 0.0;
    for i in 0..pi_h.dim {
        let mut xi = CMat::zeros(pi_h.dim, 1);
        xi[(i, 0)] = cr(1.0);
        let vxi = inclusion.mul(&xi);
        for t in 0..pi_h.group.order {
            let lhs = pi_h.pi[t].mul(&xi).dot(&xi);
            let rhs = rho_h.pi[t].mul(&vxi).dot(&vxi);
            before_error = before_error.max((lhs - rhs).norm());
        }
    }
    // after: induced inclusion slot-by-slot on Ė⁰ (E₀π must embed in E₀ρ)
    let ind_pi = induce(g_group.clone(), sub, pi_h, InduceFlavor::IndStrong)?;
    let ind_rho = induce(g_group.clone(), sub, rho_h, InduceFlavor::IndStrong)?;
    let k0p = ind_pi.space.e0_basis.len();
    let k0r = ind_rho.space.e0_basis.len();
    let nj = ind_pi.space.coset_count();
    let mut after_error: f64 = 0.0;
    for j in 0..nj {
        for b in 0..k0p {
            let mut xi = CMat::zeros(nj * k0p, 1);
            xi[(j * k0p + b, 0)] = cr(1.0);
            let moved = inclusion.mul(&ind_pi.space.e0_basis[b]);
            let mut vxi = CMat::zeros(nj * k0r, 1);
            let mut expansion = CMat::zeros(rho_h.dim, 1);
            for c in 0..k0r {
                let coeff = moved.dot(&ind_rho.space.e0_basis[c]);
                vxi[(j * k0r + c, 0)] = coeff;
                expansion = expansion.add(&ind_rho.space.e0_basis[c].scale(coeff));
            }
            if expansion.sub(&moved).max_abs() > 1e-9 {
                return Err(Error::Invalid(
                    "inclusion does not map E₀π into E₀ρ; no constructive witness".into(),
                ));
            }
            for s in g_group.elements() {
                let lhs = ind_pi.rep.pi[s].mul(&xi).dot(&xi);
                let rhs = ind_rho.rep.pi[s].mul(&vxi).dot(&vxi);
                after_error = after_error.max((lhs - rhs).norm());
            }
        }
    }
    // quasi-regular pipeline: ind 1_H plus the multiplication covariance
    let (h_group, _) = subgroup_as_group(&g_group, sub)?;
    let one_h = PartialRep::identity_rep(h_group, 1);
    let quasi = induce(g_group.clone(), sub, &one_h, InduceFlavor::IndStrong)?;
    let nj_q = quasi.space.coset_count();
    let mut eymard_identity_residual: f64 = 0.0;
    for s in g_group.elements() {
        let p_s = {
            let op = &quasi.rep.pi[s];
            op.mul(&quasi.rep.pi[g_group.inv(s)])
        };
        for j in 0..nj_q {
            let mut phi = vec![0.0; nj_q];
            phi[j] = 1.0;
            let t_phi = crate::prep::mult_op(&phi);
            let lhs = quasi.rep.pi[s].mul(&t_phi).mul(&quasi.rep.pi[g_group.inv(s)]);
            // L_sφ(x) = φ(s⁻¹x) on cosets
            let mut phi_moved = vec![0.0; nj_q];
            for (j2, &x) in quasi.space.transversal.reps.iter().enumerate() {
                let (jj, _) = quasi.space.decompose(g_group.mul(g_group.inv(s), x));
                if jj == j {
                    phi_moved[j2] = 1.0;
                }
            }
            let rhs = p_s.mul(&crate::prep::mult_op(&phi_moved));
            eymard_identity_residual = eymard_identity_residual.max(lhs.sub(&rhs).max_abs());
        }
    }
    // uniform mean on ℓ∞(G/H) invariant under coset translation
    let mut uniform_mean_residual: f64 = 0.0;
    for s in g_group.elements() {
        for j in 0..nj_q {
            let mean = 1.0 / nj_q as f64;
            let mut moved_mean = 0.0;
            for &x in &quasi.space.transversal.reps {
                let (jj, _) = quasi.space.decompose(g_group.mul(g_group.inv(s), x));
                if jj == j {
                    moved_mean += 1.0 / nj_q as f64;
                }
            }
            uniform_mean_residual = uniform_mean_residual.max((mean - moved_mean).abs());
        }
    }
    Ok(InductionContinuityReport {
        before_error,
        after_error,
        eymard_identity_residual,
        uniform_mean_residual,
    })
}

/// The E6 running instance: G = ℤ/4, H = {0,2}, π₀ = I₂, π₂ = diag(1,0).
pub fn instance_e6() -> (Arc<FiniteGroup>, Subgroup, PartialRep) {
    let z4 = Arc::new(FiniteGroup::cyclic(4));
    let sub = crate::group::subgroup_closure(&z4, &[2]).unwrap();
    let (h_group, _) = subgroup_as_group(&z4, &sub).unwrap();
    let pi = vec![
        CMat::identity(2),
        CMat::from_real_rows(vec![vec![1.0, 0.0], vec![0.0, 0.0]]),
    ];
    let rep = PartialRep::new(h_group, pi).unwrap();
    (z4, sub, rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prep::instance_e5;

    #[test]
    fn e6_dimensions_and_matrices() {
        let (z4, sub, pi) = instance_e6();
        let ind = induce(z4.clone(), &sub, &pi, InduceFlavor::Ind).unwrap();
        assert_eq!(ind.rep.dim, 4);
        assert!(verify_partial_rep(&ind.rep).is_valid());

        // frozen from the coordinate model: blocks over J = {0, 1},
        // P = diag(1,0)
        let p = CMat::from_real_rows(vec![vec![1.0, 0.0], vec![0.0, 0.0]]);
        let i2 = CMat::identity(2);
        let z2 = CMat::zeros(2, 2);
        let blocks = |m: &CMat, bi: usize, bj: usize| {
            let mut out = CMat::zeros(2, 2);
            for r in 0..2 {
                for c in 0..2 {
                    out[(r, c)] = m[(bi * 2 + r, bj * 2 + c)];
                }
            }
            out
        };
        // (Ind)_1 = [[0, P], [I, 0]]
        let m1 = &ind.rep.pi[1];
        assert!(blocks(m1, 0, 0).approx_eq(&z2, 1e-10));
        assert!(blocks(m1, 0, 1).approx_eq(&p, 1e-10));
        assert!(blocks(m1, 1, 0).approx_eq(&i2, 1e-10));
        assert!(blocks(m1, 1, 1).approx_eq(&z2, 1e-10));
        // (Ind)_2 = diag(P, P)
        let m2 = &ind.rep.pi[2];
        assert!(blocks(m2, 0, 0).approx_eq(&p, 1e-10));
        assert!(blocks(m2, 1, 1).approx_eq(&p, 1e-10));
        // (Ind)_3 = [[0, I], [P, 0]]
        let m3 = &ind.rep.pi[3];
        assert!(blocks(m3, 0, 1).approx_eq(&i2, 1e-10));
        assert!(blocks(m3, 1, 0).approx_eq(&p, 1e-10));

        // strong flavor: dim 2, the quasi-regular swap
        let ind0 = induce(z4, &sub, &pi, InduceFlavor::IndStrong).unwrap();
        assert_eq!(ind0.rep.dim, 2);
        assert!(verify_partial_rep(&ind0.rep).is_valid());
        let swap = CMat::from_real_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!(ind0.rep.pi[1].approx_eq(&swap, 1e-10));
        assert!(ind0.rep.pi[2].approx_eq(&CMat::identity(2), 1e-10));
        assert_eq!(ind0.space.dim_strong(), 2);
        assert_eq!(ind0.space.dim_weak(), 4);
    }

    #[test]
    fn h_equals_g_gives_back_pi() {
        let e5 = instance_e5();
        let z4 = e5.group.clone();
        let full = crate::group::subgroup_closure(&z4, &[1]).unwrap();
        let (hg, _) = subgroup_as_group(&z4, &full).unwrap();
        assert_eq!(hg.table, z4.table);
        let base = PartialRep::new(hg, e5.pi.clone()).unwrap();
        let ind = induce(z4.clone(), &full, &base, InduceFlavor::Ind).unwrap();
        assert_eq!(ind.rep.dim, 2);
        for t in z4.elements() {
            assert!(ind.rep.pi[t].approx_eq(&e5.pi[t], 1e-10), "t={t}");
        }
    }

    #[test]
    fn trivial_base_gives_quasi_regular() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let sub = crate::group::subgroup_closure(&z4, &[2]).unwrap();
        let (hg, _) = subgroup_as_group(&z4, &sub).unwrap();
        let one = PartialRep::identity_rep(hg, 1);
        let ind = induce(z4.clone(), &sub, &one, InduceFlavor::IndStrong).unwrap();
        assert_eq!(ind.rep.dim, 2);
        let swap = CMat::from_real_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!(ind.rep.pi[1].approx_eq(&swap, 1e-10));
    }

    #[test]
    fn global_base_matches_classical_construction() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let transposition = s3
            .elements()
            .find(|&t| t != s3.identity && s3.mul(t, t) == s3.identity)
            .unwrap();
        let sub = crate::group::subgroup_closure(&s3, &[transposition]).unwrap();
        let (hg, _) = subgroup_as_group(&s3, &sub).unwrap();
        let base = PartialRep::regular(hg);
        let ind = induce(s3.clone(), &sub, &base, InduceFlavor::Ind).unwrap();
        let classical = classical_induced(s3.clone(), &sub, &base).unwrap();
        for t in s3.elements() {
            assert!(ind.rep.pi[t].approx_eq(&classical.pi[t], 1e-10), "t={t}");
        }
        // both flavors coincide for global bases
        let ind0 = induce(s3.clone(), &sub, &base, InduceFlavor::IndStrong).unwrap();
        assert_eq!(ind0.rep.dim, ind.rep.dim);
        let space = InducedSpace::new(s3, sub, base).unwrap();
        assert_eq!(translation_cocycle_residual(&space), 0.0);
    }

    #[test]
    fn h_v_and_forbidden_sets() {
        let (z4, sub, pi) = instance_e6();
        let space = InducedSpace::new(z4, sub, pi.clone()).unwrap();
        // v ∈ E₀: no constraints at all
        let v0 = CMat::from_real_rows(vec![vec![1.0], vec![0.0]]);
        assert_eq!(h_v_compute(&pi, &v0).len(), 4); // all of H×H
        assert!(forbidden_support(&space, &v0).is_empty());

        // v = e₂: π_0(v) = v ∉ E_{2⁻¹}, so H^v = {(0,1)} in H-indices and
        // the forbidden set covers all of G
        let v1 = CMat::from_real_rows(vec![vec![0.0], vec![1.0]]);
        let hv = h_v_compute(&pi, &v1);
        assert_eq!(hv, vec![(0, 0), (1, 0), (1, 1)]);
        assert_eq!(forbidden_support(&space, &v1), vec![0, 1, 2, 3]);
    }

    #[test]
    fn xi_f_v_sections() {
        let (z4, sub, pi) = instance_e6();
        let space = InducedSpace::new(z4, sub, pi).unwrap();
        let v0 = CMat::from_real_rows(vec![vec![1.0], vec![0.0]]);
        let mut f = vec![cr(0.0); 4];
        f[0] = cr(1.0);
        let (coords, report) = xi_f_v(&space, &f, &v0).unwrap();
        assert!(report.covariance_residual < 1e-12);
        assert!(report.membership_residual < 1e-12);
        assert!(report.strong_residual < 1e-12);
        assert!(coords.max_abs() > 0.5);

        // f ≡ 0 gives ξ = 0
        let zero = vec![cr(0.0); 4];
        let (coords, _) = xi_f_v(&space, &zero, &v0).unwrap();
        assert_eq!(coords.max_abs(), 0.0);

        // v = e₂ forbids every position: nonzero f rejected with witness
        let v1 = CMat::from_real_rows(vec![vec![0.0], vec![1.0]]);
        assert!(matches!(xi_f_v(&space, &f, &v1), Err(Error::ForbiddenSupport { .. })));
    }

    #[test]
    fn urysohn_feasibility() {
        let (z4, sub, pi) = instance_e6();
        let space = InducedSpace::new(z4, sub, pi).unwrap();
        let v0 = CMat::from_real_rows(vec![vec![1.0], vec![0.0]]);
        let v1 = CMat::from_real_rows(vec![vec![0.0], vec![1.0]]);

        // all v ∈ E₀: indicator partition works
        let out =
            urysohn_check_discrete(&space, &[0, 1, 2, 3], &[vec![0, 1, 2, 3]], &[v0.clone()])
                .unwrap();
        match out {
            UrysohnOutcome::Feasible { functions } => {
                assert_eq!(functions[0], vec![1, 1, 1, 1]);
            }
            _ => panic!("expected feasible"),
        }

        // a K-point forbidden in every covering set: infeasible with witness
        let out = urysohn_check_discrete(&space, &[0], &[vec![0]], &[v1.clone()]).unwrap();
        match out {
            UrysohnOutcome::Infeasible { witness } => assert_eq!(witness, 0),
            _ => panic!("expected infeasible"),
        }

        // mixed covers: the v₀ cover rescues the point
        let out =
            urysohn_check_discrete(&space, &[0, 1], &[vec![0], vec![0, 1]], &[v1, v0]).unwrap();
        assert!(matches!(out, UrysohnOutcome::Feasible { .. }));
    }

    #[test]
    fn total_set_ranks() {
        let (z4, sub, pi) = instance_e6();
        let space = InducedSpace::new(z4.clone(), sub.clone(), pi).unwrap();
        let report = total_set_check(&space);
        assert_eq!(report.dim_strong, 2);
        assert_eq!(report.spanned_rank, 2);
        assert!(report.pass);

        // trivial base: classical density gives full rank
        let (hg, _) = subgroup_as_group(&z4, &sub).unwrap();
        let one = PartialRep::identity_rep(hg, 1);
        let space = InducedSpace::new(z4, sub, one).unwrap();
        let report = total_set_check(&space);
        assert!(report.pass);
    }

    #[test]
    fn weak_containment_self_and_obstruction() {
        let e5 = instance_e5();
        // σ = π: exact witness S = ξξ* is reachable
        let wits = weak_contains(&e5, &e5, &[1, 3], 1e-9, ContainFlavor::Plain, 3).unwrap();
        for w in &wits {
            assert!(w.max_error < 1e-6, "error {}", w.max_error);
        }

        // 1_G vs E5 ⊗ conj(E5) with t = 2 in K: (π⊗π̄)_2 = 0 forces the
        // approximated coefficient to 0 while 1_G needs 1
        let one = PartialRep::identity_rep(e5.group.clone(), 1);
        let tens = tensor_with_conjugate(&e5).unwrap();
        let wits = weak_contains(&one, &tens, &[2], 0.5, ContainFlavor::Plain, 3).unwrap();
        assert!(wits.iter().any(|w| w.max_error > 0.9), "obstruction must persist");
    }

    #[test]
    fn trivial_containment_examples() {
        // rep containing the trivial subrep: defect 0 via the constant vector
        let reg = PartialRep::regular(Arc::new(FiniteGroup::cyclic(2)));
        let t = trivial_weakly_contained(&reg, &[0, 1]);
        assert!(t.max_defect < 1e-9);
        assert!(t.halfsq_inequality_ok);

        // E5 with K = {2}: ‖π_2ξ − ξ‖ = ‖ξ‖ = 1 for every unit ξ
        let e5 = instance_e5();
        let t = trivial_weakly_contained(&e5, &[2]);
        assert!(t.max_defect >= 1.0 - 1e-9);
        assert!(t.halfsq_inequality_ok);
    }

    #[test]
    fn wcrei_audit_passes_in_all_regimes() {
        // unitary: both defects 0
        let reg = PartialRep::regular(Arc::new(FiniteGroup::cyclic(3)));
        let audit = wcrei_audit(&reg, &[0, 1, 2], 1e-8).unwrap();
        assert!(audit.ptilde2_defect < 1e-8);
        assert!(audit.tensor_trivial_defect < 1e-8);
        assert!(audit.forward_ok && audit.backward_ok);

        // E5 with K ∋ 2: both sides obstructed, equivalence holds negatively
        let e5 = instance_e5();
        let audit = wcrei_audit(&e5, &[1, 2, 3], 1e-8).unwrap();
        assert!(audit.ptilde2_defect >= 1.0 - 1e-9);
        assert!(audit.tensor_trivial_defect >= 1.0 - 1e-9);
        assert!(audit.forward_ok && audit.backward_ok);

        // E5 with K = {1,3}: defects agree within the proof inequalities
        let audit = wcrei_audit(&e5, &[1, 3], 1e-8).unwrap();
        assert!(audit.forward_ok && audit.backward_ok);
        assert!(audit.star_closed);
    }

    #[test]
    fn resind_character_times_e6() {
        let (z4, sub, pi) = instance_e6();
        // σ = the j=1 character of ℤ/4
        let chi = PartialRep::character_zn(z4.clone(), 1);
        let report = resind_check(&chi, z4.clone(), &sub, &pi).unwrap();
        assert!(report.probes >= 2);
        assert!(report.isometry_residual < 1e-10, "{report:?}");
        assert!(report.membership_residual < 1e-10, "{report:?}");
        assert!(report.intertwine_residual < 1e-10, "{report:?}");

        // σ trivial: ind(Res 1 ⊗ π) ≅ 1 ⊗ ind π = ind π
        let one = PartialRep::identity_rep(z4.clone(), 1);
        let report = resind_check(&one, z4.clone(), &sub, &pi).unwrap();
        assert!(report.intertwine_residual < 1e-10);

        // H = G: reduces to σ⊗π ≅ σ⊗π
        let full = crate::group::subgroup_closure(&z4, &[1]).unwrap();
        let (hg, _) = subgroup_as_group(&z4, &full).unwrap();
        let e5 = instance_e5();
        let base = PartialRep::new(hg, e5.pi.clone()).unwrap();
        let report = resind_check(&chi, z4, &full, &base).unwrap();
        assert!(report.intertwine_residual < 1e-10);
    }

    #[test]
    fn induction_continuity_constructive() {
        let (z4, sub, pi) = instance_e6();
        // ρ = π ⊕ (trivial rep of H on ℂ), π included as the first block
        let (hg, _) = subgroup_as_group(&z4, &sub).unwrap();
        let one = PartialRep::identity_rep(hg, 1);
        let rho = crate::prep::direct_sum(&pi, &one).unwrap();
        let mut inclusion = CMat::zeros(3, 2);
        inclusion[(0, 0)] = cr(1.0);
        inclusion[(1, 1)] = cr(1.0);
        let report = induction_continuity_harness(z4, &sub, &pi, &rho, &inclusion).unwrap();
        assert!(report.before_error < 1e-10);
        assert!(report.after_error < 1e-10);
        assert!(report.eymard_identity_residual < 1e-10);
        assert!(report.uniform_mean_residual < 1e-10);
    }
}
