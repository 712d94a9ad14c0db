//! Partial representations as finite complex matrix families: axiom
//! verification, the Koopman construction, Bekka mean densities,
//! representation-level Reiter/Følner/Dieudonné conditions, and the
//! structural operations (conjugate, direct sum, tensor, σ-representation,
//! subgroup restriction and kernel quotients).
//!
//! The realization is Hilbert only: the generalized inverse of a partial
//! isometry is its adjoint, taken with respect to the representation's
//! inner-product weights (the weighted L² of a Koopman construction).

use std::sync::Arc;

use crate::action::{rn_cocycle, verify_partial_action, PartialAction};
use crate::cx::{
    cr, hermitian_eigen, psd_project, schatten_norm, smallest_eigenpair, spectral_norm,
    trace_norm, CMat,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef, Subgroup};
use crate::ratio::{rat_to_f64, Rat};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct PartialRep {
    pub group: GroupRef,
    pub dim: usize,
    pub pi: Vec<CMat>,
    /// inner-product weights of the carrier (counting measure by default)
    pub inner_weights: Vec<f64>,
    pub tol: f64,
}

impl PartialRep {
    pub fn new(group: GroupRef, pi: Vec<CMat>) -> Result<Self> {
        let dim = pi.first().map_or(0, |m| m.rows);
        if pi.len() != group.order {
            return Err(Error::DimMismatch(format!(
                "need {} matrices, got {}",
                group.order,
                pi.len()
            )));
        }
        if pi.iter().any(|m| m.rows != dim || m.cols != dim) {
            return Err(Error::DimMismatch("matrices must be square of equal dim".into()));
        }
        Ok(PartialRep { group, dim, pi, inner_weights: vec![1.0; dim], tol: DEFAULT_TOL })
    }

    pub fn with_inner_weights(mut self, w: Vec<f64>) -> Result<Self> {
        if w.len() != self.dim || w.iter().any(|&v| !(v > 0.0)) {
            return Err(Error::Invalid("inner weights must be positive, one per dim".into()));
        }
        self.inner_weights = w;
        Ok(self)
    }

    pub fn counting_inner(&self) -> bool {
        self.inner_weights.iter().all(|&v| v == 1.0)
    }

    /// Adjoint in the weighted inner product: D⁻¹ M^H D.
    pub fn adjoint_w(&self, m: &CMat) -> CMat {
        let mut out = m.adjoint();
        for i in 0..out.rows {
            for j in 0..out.cols {
                out[(i, j)] = out[(i, j)] * cr(self.inner_weights[j] / self.inner_weights[i]);
            }
        }
        out
    }

    /// Range projection p_t = π_t π_{t⁻¹}.
    pub fn p(&self, t: usize) -> CMat {
        self.pi[t].mul(&self.pi[self.group.inv(t)])
    }

    /// π_{t⁻¹} = π_t* within tolerance (true for every Koopman-type
    /// representation; several identities below are only canonical then).
    pub fn is_star_closed(&self) -> bool {
        self.group
            .elements()
            .all(|t| self.pi[self.group.inv(t)].approx_eq(&self.adjoint_w(&self.pi[t]), self.tol))
    }

    pub fn identity_rep(group: GroupRef, dim: usize) -> Self {
        let pi = (0..group.order).map(|_| CMat::identity(dim)).collect();
        PartialRep::new(group, pi).expect("well-formed")
    }

    /// Left regular representation by permutation matrices.
    pub fn regular(group: GroupRef) -> Self {
        let n = group.order;
        let pi = group
            .elements()
            .map(|t| {
                let mut m = CMat::zeros(n, n);
                for s in group.elements() {
                    m[(group.mul(t, s), s)] = cr(1.0);
                }
                m
            })
            .collect();
        PartialRep::new(group, pi).expect("well-formed")
    }

    /// One-dimensional character of ℤ/n: t ↦ e^{2πi·jt/n}. Quarter-turn
    /// values come out exact so ±1/±i characters stay integer-entried.
    pub fn character_zn(group: GroupRef, j: usize) -> Self {
        let n = group.order;
        let pi = (0..n)
            .map(|t| {
                let r = j * t % n;
                let value = if 4 * r % n == 0 {
                    match 4 * r / n {
                        0 => crate::cx::c(1.0, 0.0),
                        1 => crate::cx::c(0.0, 1.0),
                        2 => crate::cx::c(-1.0, 0.0),
                        _ => crate::cx::c(0.0, -1.0),
                    }
                } else {
                    let angle = 2.0 * std::f64::consts::PI * r as f64 / n as f64;
                    crate::cx::c(angle.cos(), angle.sin())
                };
                CMat::from_rows(vec![vec![value]])
            })
            .collect();
        PartialRep::new(group, pi).expect("well-formed")
    }
}

#[derive(Debug, Clone)]
pub struct RepViolation {
    pub axiom: String,
    pub pair: (usize, usize),
    pub residual: f64,
}

#[derive(Debug, Clone, Default)]
pub struct RepReport {
    pub violations: Vec<RepViolation>,
    pub max_residual: f64,
}

impl RepReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, axiom: &str, pair: (usize, usize), residual: f64, tol: f64) {
        self.max_residual = self.max_residual.max(residual);
        if !(residual <= tol) {
            self.violations.push(RepViolation { axiom: axiom.into(), pair, residual });
        }
    }
}

/// π_e = I; every π_t a partial isometry (π_t π_t* π_t = π_t in the weighted
/// adjoint); π_tπ_sπ_{s⁻¹} = π_{ts}π_{s⁻¹} and π_{t⁻¹}π_tπ_s = π_{t⁻¹}π_{ts}.
pub fn verify_partial_rep(rep: &PartialRep) -> RepReport {
    let mut report = RepReport::default();
    let g = &rep.group;
    let tol = rep.tol;
    let e = g.identity;
    report.check(
        "identity",
        (e, e),
        rep.pi[e].sub(&CMat::identity(rep.dim)).max_abs(),
        tol,
    );
    for t in g.elements() {
        let s_adj = rep.adjoint_w(&rep.pi[t]);
        let res = rep.pi[t].mul(&s_adj).mul(&rep.pi[t]).sub(&rep.pi[t]).max_abs();
        report.check("partial-isometry", (t, t), res, tol);
    }
    for t in g.elements() {
        for s in g.elements() {
            let s_inv = g.inv(s);
            let ts = g.mul(t, s);
            let lhs = rep.pi[t].mul(&rep.pi[s]).mul(&rep.pi[s_inv]);
            let rhs = rep.pi[ts].mul(&rep.pi[s_inv]);
            report.check("axiom-1", (t, s), lhs.sub(&rhs).max_abs(), tol);

            let t_inv = g.inv(t);
            let lhs2 = rep.pi[t_inv].mul(&rep.pi[t]).mul(&rep.pi[s]);
            let rhs2 = rep.pi[t_inv].mul(&rep.pi[ts]);
            report.check("axiom-2", (t, s), lhs2.sub(&rhs2).max_abs(), tol);
        }
    }
    report
}

/// Koopman partial representation per the square-root Radon–Nikodym
/// formula: κ_s has entry σ_RN(x, s⁻¹)^{1/2} at (x, α_{s⁻¹}(x)) for
/// x ∈ X_s. Carries the action's weights as inner-product weights.
pub fn koopman_build(action: &PartialAction) -> Result<PartialRep> {
    if !verify_partial_action(action).is_valid() {
        return Err(Error::NotVerified("koopman_build", "partial action"));
    }
    let g = action.group.clone();
    let sigma = rn_cocycle(action);
    let m = action.set_size;
    let pi = g
        .elements()
        .map(|s| {
            let s_inv = g.inv(s);
            let mut mat = CMat::zeros(m, m);
            for x in action.x_set(s) {
                let y = action.apply(s_inv, x).expect("x ∈ X_s = dom(α_{s⁻¹})");
                let val = rat_to_f64(sigma.get(x, s_inv).expect("germ"));
                mat[(x, y)] = cr(val.sqrt());
            }
            mat
        })
        .collect();
    let weights: Vec<f64> = action.weights.iter().map(rat_to_f64).collect();
    PartialRep::new(g, pi)?.with_inner_weights(weights)
}

/// The same representation written in the ν-orthonormal basis: a partial
/// permutation family with 0/1 entries and counting inner product
/// (D^{1/2} κ_s D^{-1/2} has unit entries identically).
pub fn koopman_onb(action: &PartialAction) -> Result<PartialRep> {
    if !verify_partial_action(action).is_valid() {
        return Err(Error::NotVerified("koopman_onb", "partial action"));
    }
    let g = action.group.clone();
    let m = action.set_size;
    let pi = g
        .elements()
        .map(|s| {
            let s_inv = g.inv(s);
            let mut mat = CMat::zeros(m, m);
            for x in action.x_set(s) {
                let y = action.apply(s_inv, x).unwrap();
                mat[(x, y)] = cr(1.0);
            }
            mat
        })
        .collect();
    PartialRep::new(g, pi)
}

/// The E5 running instance: Koopman of E1 with counting weights.
pub fn instance_e5() -> PartialRep {
    koopman_build(&crate::action::instance_e1()).expect("E1 is valid")
}

/// Multiplication operator M_φ = diag(φ).
pub fn mult_op(phi: &[f64]) -> CMat {
    CMat::diag(&phi.iter().map(|&v| cr(v)).collect::<Vec<_>>())
}

/// κ_{t⁻¹} M_φ κ_t = M_{t⁻¹·φ} with (t⁻¹·φ)(x) = φ(α_t(x)) on X_{t⁻¹},
/// zero elsewhere. Returns the max residual over the δ-basis of φ.
pub fn koopman_covariance_residual(action: &PartialAction, rep: &PartialRep) -> f64 {
    let g = &rep.group;
    let mut worst: f64 = 0.0;
    for t in g.elements() {
        let t_inv = g.inv(t);
        for y in 0..action.set_size {
            let mut phi = vec![0.0; action.set_size];
            phi[y] = 1.0;
            let lhs = rep.pi[t_inv].mul(&mult_op(&phi)).mul(&rep.pi[t]);
            let mut translated = vec![0.0; action.set_size];
            for x in action.alpha[t].domain() {
                if action.alpha[t].apply(x) == Some(y) {
                    translated[x] = 1.0;
                }
            }
            let rhs = mult_op(&translated);
            worst = worst.max(lhs.sub(&rhs).max_abs());
        }
    }
    worst
}

#[derive(Debug, Clone)]
pub struct MeanDensity {
    pub matrix: CMat,
    pub trace: f64,
    pub trace_norm: f64,
    /// per-element residual ‖π_t M π_{t⁻¹} − p_t M p_t‖∞
    pub invariance_residuals: Vec<f64>,
}

fn mean_density_of(rep: &PartialRep, m: &CMat) -> MeanDensity {
    let residuals = rep
        .group
        .elements()
        .map(|t| {
            let t_inv = rep.group.inv(t);
            let lhs = rep.pi[t].mul(m).mul(&rep.pi[t_inv]);
            let p = rep.p(t);
            let rhs = p.mul(m).mul(&p);
            lhs.sub(&rhs).max_abs()
        })
        .collect();
    MeanDensity {
        matrix: m.clone(),
        trace: m.trace().re,
        trace_norm: trace_norm(m),
        invariance_residuals: residuals,
    }
}

/// M = I/d satisfies π_t M π_{t⁻¹} = p_t/d = p_t M p_t identically, so Bekka
/// feasibility never fails in finite dimension. The fiberwise average
/// M̂ ∝ Σ_t p_t is returned alongside with its measured residuals.
pub fn bekka_mean_solve(rep: &PartialRep) -> Result<(MeanDensity, MeanDensity)> {
    if rep.dim == 0 {
        return Err(Error::DimMismatch("zero-dimensional representation".into()));
    }
    let identity_mean =
        mean_density_of(rep, &CMat::identity(rep.dim).scale(cr(1.0 / rep.dim as f64)));
    let mut avg = CMat::zeros(rep.dim, rep.dim);
    for t in rep.group.elements() {
        avg = avg.add(&rep.p(t));
    }
    let tr = avg.trace().re;
    let averaged = if tr.abs() > 1e-12 { avg.scale(cr(1.0 / tr)) } else { avg };
    Ok((identity_mean, mean_density_of(rep, &averaged)))
}

#[derive(Debug, Clone)]
pub struct MeanReport {
    pub trace_error: f64,
    pub trace_norm_error: f64,
    pub min_eigenvalue: f64,
    pub max_invariance_residual: f64,
    pub ok: bool,
}

/// Trace 1, trace-norm 1 (which forces positive semidefiniteness), and the
/// conjugation invariance, re-measured from scratch.
pub fn verify_bekka_mean(rep: &PartialRep, m: &CMat) -> Result<MeanReport> {
    if m.rows != rep.dim || m.cols != rep.dim {
        return Err(Error::DimMismatch("mean density shape".into()));
    }
    let md = mean_density_of(rep, m);
    let (eigs, _) = hermitian_eigen(&m.hermitian_part());
    let trace_error = (md.trace - 1.0).abs();
    let trace_norm_error = (md.trace_norm - 1.0).abs();
    let min_eigenvalue = eigs.first().copied().unwrap_or(0.0);
    let max_invariance_residual =
        md.invariance_residuals.iter().copied().fold(0.0f64, f64::max);
    let ok = trace_error <= rep.tol
        && trace_norm_error <= rep.tol
        && min_eigenvalue >= -rep.tol
        && max_invariance_residual <= rep.tol;
    Ok(MeanReport { trace_error, trace_norm_error, min_eigenvalue, max_invariance_residual, ok })
}

/// Mean density from a defect-0 L² Reiter function: the rank-one f f*.
pub fn mean_from_reiter_vector(rep: &PartialRep, f: &[f64]) -> Result<MeanDensity> {
    if f.len() != rep.dim {
        return Err(Error::DimMismatch("Reiter vector length".into()));
    }
    let mut m = CMat::zeros(rep.dim, rep.dim);
    for i in 0..rep.dim {
        for j in 0..rep.dim {
            m[(i, j)] = cr(f[i] * f[j]);
        }
    }
    let norm: f64 = f.iter().map(|v| v * v).sum();
    if norm <= 0.0 {
        return Err(Error::Invalid("zero Reiter vector".into()));
    }
    Ok(mean_density_of(rep, &m.scale(cr(1.0 / norm))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReiterFlavor {
    /// positive T (Hilbert (P_p))
    Positive,
    /// arbitrary norm-one T ((P̃_p))
    Plain,
    /// positive with the extra right-support condition ((Pˢ_p))
    Strong,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    MaxIter,
    /// π_t = 0 for some t ∈ K: ‖π_tTπ_{t⁻¹} − T‖_p = ‖T‖_p = 1 for every T
    InfeasibleLowerBound,
}

#[derive(Debug, Clone)]
pub struct RepReiterCertificate {
    pub p: u8,
    pub flavor: ReiterFlavor,
    pub t_matrix: CMat,
    /// (group element, ‖π_tTπ_{t⁻¹} − T‖_p)
    pub defects: Vec<(usize, f64)>,
    pub achieved: f64,
    pub status: SolveStatus,
    /// element witnessing the exact obstruction, if any
    pub obstruction: Option<usize>,
}

pub fn rep_defects(rep: &PartialRep, k: &[usize], t_mat: &CMat, p: u8) -> Vec<(usize, f64)> {
    k.iter()
        .map(|&t| {
            let d = rep.pi[t].mul(t_mat).mul(&rep.pi[rep.group.inv(t)]).sub(t_mat);
            (t, schatten_norm(&d, p as f64))
        })
        .collect()
}

/// Superoperator of T ↦ π_t T π_{t⁻¹} in row-major vec coordinates.
pub fn conj_superop(rep: &PartialRep, t: usize) -> CMat {
    rep.pi[t].kron(&rep.pi[rep.group.inv(t)].transpose())
}

/// p = 2 plain: exact global minimizer via the smallest eigenvector of
/// Σ (S_t − I)^H (S_t − I). Positive flavor: alternating projection between
/// the PSD cone and the Frobenius sphere, seeded by the eigen solution.
/// p = 1: trace-norm re-evaluation of the p = 2 solution plus a direct
/// search over diagonal densities.
pub fn rep_reiter_solve(
    rep: &PartialRep,
    k: &[usize],
    p: u8,
    flavor: ReiterFlavor,
) -> Result<RepReiterCertificate> {
    if !(p == 1 || p == 2) {
        return Err(Error::Invalid("p ∈ {1,2}".into()));
    }
    // exact obstruction
    if let Some(&t) = k.iter().find(|&&t| rep.pi[t].max_abs() <= rep.tol) {
        let d = rep.dim as f64;
        let t_mat =
            CMat::identity(rep.dim).scale(cr(if p == 2 { 1.0 / d.sqrt() } else { 1.0 / d }));
        let defects = rep_defects(rep, k, &t_mat, p);
        let achieved = defects.iter().map(|&(_, v)| v).fold(0.0f64, f64::max);
        return Ok(RepReiterCertificate {
            p,
            flavor,
            t_matrix: t_mat,
            defects,
            achieved,
            status: SolveStatus::InfeasibleLowerBound,
            obstruction: Some(t),
        });
    }

    let d2 = rep.dim * rep.dim;
    let mut h = CMat::zeros(d2, d2);
    let id = CMat::identity(d2);
    for &t in k {
        let l = conj_superop(rep, t).sub(&id);
        h = h.add(&l.adjoint().mul(&l));
    }
    let (_, v0) = smallest_eigenpair(&h);
    let mut t_mat = CMat::unvec(&v0, rep.dim, rep.dim);
    let nrm = t_mat.fro_norm();
    if nrm > 1e-300 {
        t_mat = t_mat.scale(cr(1.0 / nrm));
    }
    let mut status = SolveStatus::Converged;

    if matches!(flavor, ReiterFlavor::Positive | ReiterFlavor::Strong) {
        // alternating projection PSD-cone / unit sphere
        let mut cur = t_mat.clone();
        if cur.trace().re < 0.0 {
            cur = cur.scale(cr(-1.0));
        }
        let mut best = psd_project(&cur);
        if best.fro_norm() <= 1e-12 {
            best = CMat::identity(rep.dim);
        }
        best = best.scale(cr(1.0 / best.fro_norm()));
        let mut best_score = f64::INFINITY;
        status = SolveStatus::MaxIter;
        for _ in 0..200 {
            let proj = psd_project(&cur);
            let nrm = proj.fro_norm();
            cur = if nrm > 1e-12 {
                proj.scale(cr(1.0 / nrm))
            } else {
                CMat::identity(rep.dim).scale(cr(1.0 / (rep.dim as f64).sqrt()))
            };
            let score = k
                .iter()
                .map(|&t| {
                    rep.pi[t].mul(&cur).mul(&rep.pi[rep.group.inv(t)]).sub(&cur).fro_norm()
                })
                .fold(0.0f64, f64::max);
            if score < best_score - 1e-14 {
                best_score = score;
                best = cur.clone();
            } else {
                status = SolveStatus::Converged;
                break;
            }
            // averaging step toward joint invariance
            let mut avg = cur.clone();
            for &t in k {
                avg = avg.add(&rep.pi[t].mul(&cur).mul(&rep.pi[rep.group.inv(t)]));
            }
            cur = avg.scale(cr(1.0 / (k.len() as f64 + 1.0)));
        }
        t_mat = best;
    }

    if p == 1 {
        // normalize in trace norm and also try diagonal densities
        let tn = trace_norm(&t_mat);
        if tn > 1e-12 {
            t_mat = t_mat.scale(cr(1.0 / tn));
        }
        let mut candidates: Vec<CMat> = vec![t_mat.clone()];
        candidates.push(CMat::identity(rep.dim).scale(cr(1.0 / rep.dim as f64)));
        let mut w = vec![1.0 / rep.dim as f64; rep.dim];
        for _ in 0..100 {
            let diag = CMat::diag(&w.iter().map(|&v| cr(v)).collect::<Vec<_>>());
            let defs = rep_defects(rep, k, &diag, 1);
            let (wt, _) =
                defs.iter().fold((k[0], -1.0), |acc, &(t, v)| if v > acc.1 { (t, v) } else { acc });
            // push mass toward the p_t-stable coordinates for the worst t
            let pt = rep.p(wt);
            let mut moved = w.clone();
            for i in 0..rep.dim {
                let keep = pt[(i, i)].re.clamp(0.0, 1.0);
                moved[i] = 0.9 * w[i] + 0.1 * keep * w[i];
            }
            let total: f64 = moved.iter().sum();
            if total <= 1e-300 {
                break;
            }
            for v in moved.iter_mut() {
                *v /= total;
            }
            if moved.iter().zip(&w).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max) < 1e-14 {
                break;
            }
            w = moved;
        }
        candidates.push(CMat::diag(&w.iter().map(|&v| cr(v)).collect::<Vec<_>>()));
        let best = candidates
            .into_iter()
            .map(|c| {
                let defs = rep_defects(rep, k, &c, 1);
                let worst = defs.iter().map(|&(_, v)| v).fold(0.0f64, f64::max);
                (c, worst)
            })
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        t_mat = best.0;
    }

    let defects = rep_defects(rep, k, &t_mat, p);
    let achieved = defects.iter().map(|&(_, v)| v).fold(0.0f64, f64::max);
    Ok(RepReiterCertificate {
        p,
        flavor,
        t_matrix: t_mat,
        defects,
        achieved,
        status,
        obstruction: None,
    })
}

pub fn verify_rep_reiter(rep: &PartialRep, k: &[usize], cert: &RepReiterCertificate) -> Result<()> {
    let norm = schatten_norm(&cert.t_matrix, cert.p as f64);
    if cert.status != SolveStatus::InfeasibleLowerBound && (norm - 1.0).abs() > 1e-8 {
        return Err(Error::Invalid(format!("‖T‖_{} = {norm} ≠ 1", cert.p)));
    }
    if matches!(cert.flavor, ReiterFlavor::Positive | ReiterFlavor::Strong) {
        let (eigs, _) = hermitian_eigen(&cert.t_matrix.hermitian_part());
        if eigs.first().copied().unwrap_or(0.0) < -1e-8 {
            return Err(Error::Invalid("positive-flavor T is not PSD".into()));
        }
    }
    let recomputed = rep_defects(rep, k, &cert.t_matrix, cert.p);
    for ((t1, d1), (t2, d2)) in recomputed.iter().zip(&cert.defects) {
        if t1 != t2 || (d1 - d2).abs() > 1e-9 * d1.max(1.0) {
            return Err(Error::Invalid("declared defects do not recompute".into()));
        }
    }
    if let Some(t) = cert.obstruction {
        if rep.pi[t].max_abs() > rep.tol {
            return Err(Error::Invalid("obstruction witness is not a zero operator".into()));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub enum FolnerRepOutcome {
    Feasible { projection_mask: Vec<usize>, defects: Vec<(usize, f64)> },
    InfeasibleEnumerated { masks_checked: u64 },
    Unknown,
}

/// Projection search over coordinate subsets (exhaustive for d ≤ 10) and
/// spectral projectors of Σ_t p_t as a heuristic above that.
pub fn rep_folner_search(rep: &PartialRep, k: &[usize], eps: f64) -> FolnerRepOutcome {
    let d = rep.dim;
    let check = |proj: &CMat| -> Option<Vec<(usize, f64)>> {
        let rank = proj.trace().re;
        if rank <= 0.0 {
            return None;
        }
        let defs: Vec<(usize, f64)> = k
            .iter()
            .map(|&t| {
                let dmat = rep.pi[t].mul(proj).mul(&rep.pi[rep.group.inv(t)]).sub(proj);
                (t, trace_norm(&dmat))
            })
            .collect();
        if defs.iter().all(|&(_, v)| v <= eps * rank) {
            Some(defs)
        } else {
            None
        }
    };
    if d <= 10 {
        let total = (1u64 << d) - 1;
        for mask in 1u64..=total {
            let diag: Vec<_> =
                (0..d).map(|i| cr(if mask >> i & 1 == 1 { 1.0 } else { 0.0 })).collect();
            let proj = CMat::diag(&diag);
            if let Some(defects) = check(&proj) {
                let projection_mask = (0..d).filter(|&i| mask >> i & 1 == 1).collect();
                return FolnerRepOutcome::Feasible { projection_mask, defects };
            }
        }
        return FolnerRepOutcome::InfeasibleEnumerated { masks_checked: total };
    }
    // heuristic: spectral projector onto the top eigenspace of Σ p_t
    let mut a = CMat::zeros(d, d);
    for t in rep.group.elements() {
        a = a.add(&rep.p(t));
    }
    let (vals, vecs) = hermitian_eigen(&a.hermitian_part());
    let top = vals.last().copied().unwrap_or(0.0);
    let cols: Vec<CMat> = (0..d)
        .filter(|&j| (vals[j] - top).abs() <= 1e-9 * top.abs().max(1.0))
        .map(|j| vecs.column(j))
        .collect();
    let proj = crate::cx::projection_onto_span(&cols, d, 1e-12);
    if let Some(defects) = check(&proj) {
        return FolnerRepOutcome::Feasible { projection_mask: vec![], defects };
    }
    FolnerRepOutcome::Unknown
}

/// Weak Følner: a projection working outside an exceptional set N ⊆ K with
/// |N| ≤ δ·|K|.
pub fn weak_folner_search(
    rep: &PartialRep,
    k: &[usize],
    eps: f64,
    delta: f64,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let d = rep.dim;
    let budget = (delta * k.len() as f64).floor() as usize;
    if d > 16 {
        return None;
    }
    for mask in 1u64..(1u64 << d) {
        let diag: Vec<_> =
            (0..d).map(|i| cr(if mask >> i & 1 == 1 { 1.0 } else { 0.0 })).collect();
        let proj = CMat::diag(&diag);
        let rank = proj.trace().re;
        let bad: Vec<usize> = k
            .iter()
            .copied()
            .filter(|&t| {
                let dmat = rep.pi[t].mul(&proj).mul(&rep.pi[rep.group.inv(t)]).sub(&proj);
                trace_norm(&dmat) > eps * rank
            })
            .collect();
        if bad.len() <= budget {
            let p_mask = (0..d).filter(|&i| mask >> i & 1 == 1).collect();
            return Some((p_mask, bad));
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct DieudonneReport {
    pub mu_mass: f64,
    /// exact (to rounding) super-operator 2-norm via singular values
    pub p2_norm: f64,
    /// probe-based lower bound and the universal upper bound Σμ for p = 1
    pub p1_lower: f64,
    pub p1_upper: f64,
    pub holds_p2: bool,
    pub holds_p1_within_probes: bool,
}

/// Φ^p_π(μ) T = Σ_t μ(t) π_t T π_{t⁻¹}; Dieudonné asks ‖Φ(μ)‖ = ‖μ‖.
pub fn dieudonne_check(rep: &PartialRep, mu: &[f64], tol: f64) -> Result<DieudonneReport> {
    if mu.len() != rep.group.order {
        return Err(Error::SizeMismatch("μ must weight every group element".into()));
    }
    if mu.iter().any(|&v| v < 0.0) {
        return Err(Error::Invalid("μ must be nonnegative".into()));
    }
    let mu_mass: f64 = mu.iter().sum();
    let d2 = rep.dim * rep.dim;
    let mut phi = CMat::zeros(d2, d2);
    for t in rep.group.elements() {
        if mu[t] == 0.0 {
            continue;
        }
        phi = phi.add(&conj_superop(rep, t).scale(cr(mu[t])));
    }
    let p2_norm = spectral_norm(&phi);
    // p = 1 bounds: each conjugation is a trace-norm contraction, so Σμ is
    // an upper bound; probes give the lower bound.
    let mut p1_lower: f64 = 0.0;
    let probes: Vec<CMat> = {
        let mut v = vec![CMat::identity(rep.dim).scale(cr(1.0 / rep.dim as f64))];
        for t in rep.group.elements() {
            let p = rep.p(t);
            let tn = trace_norm(&p);
            if tn > 1e-12 {
                v.push(p.scale(cr(1.0 / tn)));
            }
        }
        v
    };
    for probe in &probes {
        let mut image = CMat::zeros(rep.dim, rep.dim);
        for t in rep.group.elements() {
            if mu[t] == 0.0 {
                continue;
            }
            image =
                image.add(&rep.pi[t].mul(probe).mul(&rep.pi[rep.group.inv(t)]).scale(cr(mu[t])));
        }
        p1_lower = p1_lower.max(trace_norm(&image) / trace_norm(probe));
    }
    Ok(DieudonneReport {
        mu_mass,
        p2_norm,
        p1_lower,
        p1_upper: mu_mass,
        holds_p2: (p2_norm - mu_mass).abs() <= tol,
        holds_p1_within_probes: (p1_lower - mu_mass).abs() <= tol,
    })
}

// ---- structural operations ----

pub fn conjugate_rep(rep: &PartialRep) -> PartialRep {
    PartialRep {
        group: rep.group.clone(),
        dim: rep.dim,
        pi: rep.pi.iter().map(|m| m.conj()).collect(),
        inner_weights: rep.inner_weights.clone(),
        tol: rep.tol,
    }
}

pub fn direct_sum(a: &PartialRep, b: &PartialRep) -> Result<PartialRep> {
    if a.group.table != b.group.table {
        return Err(Error::Invalid("direct sum needs the same group".into()));
    }
    let pi = a.group.elements().map(|t| a.pi[t].dsum(&b.pi[t])).collect();
    let mut weights = a.inner_weights.clone();
    weights.extend_from_slice(&b.inner_weights);
    Ok(PartialRep {
        group: a.group.clone(),
        dim: a.dim + b.dim,
        pi,
        inner_weights: weights,
        tol: a.tol.max(b.tol),
    })
}

pub fn tensor(a: &PartialRep, b: &PartialRep) -> Result<PartialRep> {
    if a.group.table != b.group.table {
        return Err(Error::Invalid("tensor needs the same group".into()));
    }
    let pi = a.group.elements().map(|t| a.pi[t].kron(&b.pi[t])).collect();
    let mut weights = Vec::with_capacity(a.dim * b.dim);
    for &wa in &a.inner_weights {
        for &wb in &b.inner_weights {
            weights.push(wa * wb);
        }
    }
    Ok(PartialRep {
        group: a.group.clone(),
        dim: a.dim * b.dim,
        pi,
        inner_weights: weights,
        tol: a.tol.max(b.tol),
    })
}

/// π ⊗ π̄ as explicit Kronecker matrices.
pub fn tensor_with_conjugate(rep: &PartialRep) -> Result<PartialRep> {
    tensor(rep, &conjugate_rep(rep))
}

/// σ_t(T) = π_t T π_{t⁻¹} on the d²-dimensional Hilbert–Schmidt space.
/// For star-closed representations this equals π ⊗ π̄ entrywise in
/// row-major vec coordinates (the canonical matrix-to-tensor unitary is
/// the identity there); the comparison residual is returned.
pub fn sigma_rep(rep: &PartialRep) -> (PartialRep, f64) {
    let pi: Vec<CMat> = rep.group.elements().map(|t| conj_superop(rep, t)).collect();
    let sigma = PartialRep {
        group: rep.group.clone(),
        dim: rep.dim * rep.dim,
        pi,
        inner_weights: vec![1.0; rep.dim * rep.dim],
        tol: rep.tol,
    };
    let tens = tensor_with_conjugate(rep).expect("same group");
    let residual = rep
        .group
        .elements()
        .map(|t| sigma.pi[t].sub(&tens.pi[t]).max_abs())
        .fold(0.0f64, f64::max);
    (sigma, residual)
}

/// Restriction to the invariant subspace spanned by the given columns; the
/// claimed invariance is verified first.
pub fn subrep_restrict(rep: &PartialRep, basis: &[CMat]) -> Result<PartialRep> {
    let q = crate::cx::orthonormal_span(basis, 1e-12);
    if q.is_empty() {
        return Err(Error::Invalid("empty subspace".into()));
    }
    let k = q.len();
    let mut qmat = CMat::zeros(rep.dim, k);
    for (j, col) in q.iter().enumerate() {
        qmat.set_column(j, col);
    }
    let proj = qmat.mul(&qmat.adjoint());
    let complement = CMat::identity(rep.dim).sub(&proj);
    for t in rep.group.elements() {
        let leak = complement.mul(&rep.pi[t]).mul(&qmat).max_abs();
        if leak > rep.tol {
            return Err(Error::NotInvariantSubspace(leak));
        }
    }
    let pi = rep.group.elements().map(|t| qmat.adjoint().mul(&rep.pi[t]).mul(&qmat)).collect();
    Ok(PartialRep { group: rep.group.clone(), dim: k, pi, inner_weights: vec![1.0; k], tol: rep.tol })
}

/// Builds the abstract group of a subgroup (reindexed 0..|H|-1) plus the
/// element translation table.
pub fn subgroup_as_group(
    group: &FiniteGroup,
    sub: &Subgroup,
) -> Result<(Arc<FiniteGroup>, Vec<usize>)> {
    let check = sub.verify(group);
    if !check.is_valid() {
        return Err(Error::NotVerified("subgroup_as_group", "subgroup"));
    }
    let elems = sub.elements.clone();
    let index_of: std::collections::BTreeMap<usize, usize> =
        elems.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let table = elems
        .iter()
        .map(|&a| elems.iter().map(|&b| index_of[&group.mul(a, b)]).collect())
        .collect();
    Ok((Arc::new(FiniteGroup::from_table(table)?), elems))
}

pub fn restrict_to_subgroup(rep: &PartialRep, sub: &Subgroup) -> Result<PartialRep> {
    let (h_group, elems) = subgroup_as_group(&rep.group, sub)?;
    let pi = elems.iter().map(|&h| rep.pi[h].clone()).collect();
    Ok(PartialRep {
        group: h_group,
        dim: rep.dim,
        pi,
        inner_weights: rep.inner_weights.clone(),
        tol: rep.tol,
    })
}

/// π̇ on G/H for normal H ⊆ ker(π): π̇_{tH} := π_t, well-definedness checked
/// across coset members.
pub fn quotient_rep(rep: &PartialRep, sub: &Subgroup) -> Result<PartialRep> {
    let g = &rep.group;
    if !sub.is_normal(g) {
        return Err(Error::Invalid("subgroup is not normal".into()));
    }
    for &h in &sub.elements {
        if rep.pi[h].sub(&CMat::identity(rep.dim)).max_abs() > rep.tol {
            return Err(Error::KernelCondition(h));
        }
    }
    let mut coset_of = vec![usize::MAX; g.order];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for t in g.elements() {
        if coset_of[t] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = sub.elements.iter().map(|&h| g.mul(t, h)).collect();
        let id = cosets.len();
        for &m in &members {
            coset_of[m] = id;
        }
        cosets.push(members);
    }
    let k = cosets.len();
    let mut table = vec![vec![0usize; k]; k];
    for (i, ci) in cosets.iter().enumerate() {
        for (j, cj) in cosets.iter().enumerate() {
            table[i][j] = coset_of[g.mul(ci[0], cj[0])];
        }
    }
    let quotient_group = Arc::new(FiniteGroup::from_table(table)?);
    for members in &cosets {
        let first = &rep.pi[members[0]];
        for &m in &members[1..] {
            if rep.pi[m].sub(first).max_abs() > rep.tol {
                return Err(Error::Invalid(format!(
                    "π is not constant on the coset of {}",
                    members[0]
                )));
            }
        }
    }
    let pi = cosets.iter().map(|members| rep.pi[members[0]].clone()).collect();
    Ok(PartialRep {
        group: quotient_group,
        dim: rep.dim,
        pi,
        inner_weights: rep.inner_weights.clone(),
        tol: rep.tol,
    })
}

/// a = Σ_x η(x)·m(x) from a π-invariant section η : X → E* and an invariant
/// mean; invariance of η is verified first (functionals act by
/// φ ↦ φ∘π_{s⁻¹}, i.e. columns transform by π_{s⁻¹}ᵀ).
pub fn eymard_fixed_point(
    rep: &PartialRep,
    action: &PartialAction,
    eta: &CMat,
    mu: &[Rat],
) -> Result<(CMat, Vec<f64>)> {
    if eta.rows != rep.dim || eta.cols != action.set_size {
        return Err(Error::DimMismatch("section shape".into()));
    }
    if mu.len() != action.set_size {
        return Err(Error::SizeMismatch("mean weights".into()));
    }
    let g = &rep.group;
    for s in g.elements() {
        let dual = rep.pi[g.inv(s)].transpose();
        let dom = action.x_set_mask(g.inv(s)); // X_{s⁻¹}
        for x in 0..action.set_size {
            let moved = dual.mul(&eta.column(x));
            let expected = if dom[x] {
                eta.column(action.apply(s, x).expect("x ∈ X_{s⁻¹}"))
            } else {
                CMat::zeros(rep.dim, 1)
            };
            let residual = moved.sub(&expected).max_abs();
            if residual > rep.tol {
                return Err(Error::SectionNotInvariant { s, x, residual });
            }
        }
    }
    let mut a = CMat::zeros(rep.dim, 1);
    for x in 0..action.set_size {
        a = a.add(&eta.column(x).scale(cr(rat_to_f64(&mu[x]))));
    }
    let residuals = g
        .elements()
        .map(|s| rep.pi[g.inv(s)].transpose().mul(&a).sub(&a).max_abs())
        .collect();
    Ok((a, residuals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{instance_e1, restrict_global, PartialAction};
    use crate::ratio::rat;
    use std::sync::Arc;

    fn z4_rotation() -> PartialAction {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        PartialAction::global(
            z4,
            (0..4).map(|t| (0..4).map(|x| (x + t) % 4).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn e5_matches_hand_matrices_and_verifies_exactly() {
        let rep = instance_e5();
        assert_eq!(rep.pi[0], CMat::identity(2));
        assert_eq!(rep.pi[1], CMat::unit(2, 2, 1, 0));
        assert_eq!(rep.pi[2], CMat::zeros(2, 2));
        assert_eq!(rep.pi[3], CMat::unit(2, 2, 0, 1));
        let report = verify_partial_rep(&rep);
        assert!(report.is_valid());
        assert_eq!(report.max_residual, 0.0); // counting weights: exact
        assert!(rep.is_star_closed());
    }

    #[test]
    fn unitary_rep_verifies() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let rep = PartialRep::regular(z4);
        assert!(verify_partial_rep(&rep).is_valid());
    }

    #[test]
    fn tampered_e5_fails_at_2_1() {
        let mut rep = instance_e5();
        rep.pi[2] = CMat::identity(2);
        let report = verify_partial_rep(&rep);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| v.pair == (2, 1) && (v.axiom == "axiom-1" || v.axiom == "axiom-2")));
    }

    #[test]
    fn koopman_of_global_action_is_permutation() {
        let rot = z4_rotation();
        let rep = koopman_build(&rot).unwrap();
        for t in 0..4 {
            let m = &rep.pi[t];
            for i in 0..4 {
                let row: f64 = (0..4).map(|j| m[(i, j)].norm()).sum();
                assert!((row - 1.0).abs() < 1e-12);
            }
        }
        assert!(verify_partial_rep(&rep).is_valid());
    }

    #[test]
    fn weighted_koopman_entry_and_validity() {
        // E1 with ν = (1,2): κ₁ entry is σ_RN(1, 3)^{1/2} = (1/2)^{1/2}
        let a = instance_e1().with_weights(vec![rat(1, 1), rat(2, 1)]).unwrap();
        let rep = koopman_build(&a).unwrap();
        let expected = (0.5f64).sqrt();
        assert!((rep.pi[1][(1, 0)].re - expected).abs() < 1e-15);
        let report = verify_partial_rep(&rep);
        assert!(report.is_valid(), "max residual {}", report.max_residual);
        assert!(report.max_residual < 1e-12);
        // ONB picture: partial permutation
        let onb = koopman_onb(&a).unwrap();
        assert_eq!(onb.pi[1], CMat::unit(2, 2, 1, 0));
        assert!(verify_partial_rep(&onb).is_valid());
    }

    #[test]
    fn koopman_covariance_exact_on_counting() {
        let a = instance_e1();
        let rep = instance_e5();
        assert_eq!(koopman_covariance_residual(&a, &rep), 0.0);

        let rot = z4_rotation();
        let (arc3, _) = restrict_global(&rot, &[0, 1, 2]).unwrap();
        let rep3 = koopman_build(&arc3).unwrap();
        assert_eq!(koopman_covariance_residual(&arc3, &rep3), 0.0);
    }

    #[test]
    fn bekka_identity_mean_exact() {
        for rep in [instance_e5(), PartialRep::regular(Arc::new(FiniteGroup::cyclic(3)))] {
            let (id_mean, avg_mean) = bekka_mean_solve(&rep).unwrap();
            assert_eq!(
                id_mean.invariance_residuals.iter().copied().fold(0.0f64, f64::max),
                0.0
            );
            let report = verify_bekka_mean(&rep, &id_mean.matrix).unwrap();
            assert!(report.ok);
            assert_eq!(report.trace_error, 0.0);
            let vr = verify_bekka_mean(&rep, &avg_mean.matrix).unwrap();
            assert!(vr.trace_error < 1e-9);
        }
    }

    #[test]
    fn non_psd_mean_rejected() {
        let rep = PartialRep::identity_rep(Arc::new(FiniteGroup::cyclic(2)), 2);
        // trace 1 but an eigenvalue −1/4: trace norm > 1
        let m = CMat::diag(&[cr(1.25), cr(-0.25)]);
        let report = verify_bekka_mean(&rep, &m).unwrap();
        assert!(!report.ok);
        assert!(report.trace_norm_error > 0.1);
    }

    #[test]
    fn rank_one_mean_from_invariant_measure() {
        let a = instance_e1();
        let rep = koopman_onb(&a).unwrap();
        // f = sqrt(μ/ν) with uniform μ: defect-0 Reiter vector
        let f: Vec<f64> = vec![(0.5f64).sqrt(); 2];
        let mean = mean_from_reiter_vector(&rep, &f).unwrap();
        let report = verify_bekka_mean(&rep, &mean.matrix).unwrap();
        assert!(report.ok, "residual {}", report.max_invariance_residual);
        assert_eq!(report.max_invariance_residual, 0.0);
    }

    #[test]
    fn reiter_obstruction_on_e5_with_2() {
        let rep = instance_e5();
        let cert = rep_reiter_solve(&rep, &[1, 2, 3], 1, ReiterFlavor::Positive).unwrap();
        assert_eq!(cert.status, SolveStatus::InfeasibleLowerBound);
        assert_eq!(cert.obstruction, Some(2));
        assert!(cert.achieved >= 1.0 - 1e-12);
        assert!(verify_rep_reiter(&rep, &[1, 2, 3], &cert).is_ok());
    }

    #[test]
    fn reiter_unitary_defect_zero() {
        let rep = PartialRep::regular(Arc::new(FiniteGroup::cyclic(4)));
        let k: Vec<usize> = (0..4).collect();
        let cert = rep_reiter_solve(&rep, &k, 2, ReiterFlavor::Plain).unwrap();
        assert!(cert.achieved < 1e-9, "achieved {}", cert.achieved);
        assert!(verify_rep_reiter(&rep, &k, &cert).is_ok());
        let cert1 = rep_reiter_solve(&rep, &k, 1, ReiterFlavor::Positive).unwrap();
        assert!(cert1.achieved < 1e-9);
    }

    #[test]
    fn reiter_e5_without_2_brute_force_cross_check() {
        // K = {1,3}: grid-search oracle over 2×2 real symmetric densities
        // T = [[a, c], [c, b]] with a + b = 1
        let rep = instance_e5();
        let k = [1usize, 3];
        let cert = rep_reiter_solve(&rep, &k, 1, ReiterFlavor::Positive).unwrap();
        let mut best = f64::INFINITY;
        let n = 60;
        for ai in 0..=n {
            let a = ai as f64 / n as f64;
            let b = 1.0 - a;
            let cmax = (a * b).sqrt();
            for ci in -10i32..=10 {
                let c = cmax * ci as f64 / 10.0;
                let t = CMat::from_real_rows(vec![vec![a, c], vec![c, b]]);
                let defs = super::rep_defects(&rep, &k, &t, 1);
                best = best.min(defs.iter().map(|&(_, v)| v).fold(0.0f64, f64::max));
            }
        }
        assert!(cert.achieved <= best + 1e-6, "solver {} vs grid {}", cert.achieved, best);
    }

    #[test]
    fn rep_reiter_defects_unitarily_invariant() {
        let rep = instance_e5();
        let k = [1usize, 3];
        let cert = rep_reiter_solve(&rep, &k, 2, ReiterFlavor::Plain).unwrap();
        let theta = 0.37f64;
        let u = CMat::from_rows(vec![
            vec![cr(theta.cos()), cr(-theta.sin())],
            vec![cr(theta.sin()), cr(theta.cos())],
        ]);
        let conj = PartialRep {
            group: rep.group.clone(),
            dim: 2,
            pi: rep.pi.iter().map(|m| u.adjoint().mul(m).mul(&u)).collect(),
            inner_weights: vec![1.0; 2],
            tol: rep.tol,
        };
        let cert2 = rep_reiter_solve(&conj, &k, 2, ReiterFlavor::Plain).unwrap();
        assert!((cert.achieved - cert2.achieved).abs() < 1e-9);
    }

    #[test]
    fn folner_rep_examples() {
        // unitary: P = I works
        let rep = PartialRep::regular(Arc::new(FiniteGroup::cyclic(3)));
        match rep_folner_search(&rep, &[0, 1, 2], 0.5) {
            FolnerRepOutcome::Feasible { defects, .. } => {
                assert!(defects.iter().all(|&(_, v)| v < 1e-9));
            }
            other => panic!("expected feasible, got {other:?}"),
        }
        // E5 including the zero operator: coordinate projections enumerated
        let e5 = instance_e5();
        let out = rep_folner_search(&e5, &[1, 2, 3], 0.5);
        match out {
            FolnerRepOutcome::InfeasibleEnumerated { masks_checked } => {
                assert_eq!(masks_checked, 3);
            }
            other => panic!("expected enumeration verdict, got {other:?}"),
        }
        // weak Følner can drop the bad element
        let weak = weak_folner_search(&e5, &[1, 2, 3], 0.5, 0.4);
        assert!(weak.is_some());
        let (_, bad) = weak.unwrap();
        assert_eq!(bad, vec![2]);
    }

    #[test]
    fn dieudonne_examples() {
        let rep = instance_e5();
        // μ = δ_e: the identity superoperator
        let mut mu = vec![0.0; 4];
        mu[0] = 1.0;
        let report = dieudonne_check(&rep, &mu, 1e-9).unwrap();
        assert!(report.holds_p2);
        assert!((report.p2_norm - 1.0).abs() < 1e-9);

        // unitary rep: any μ attains ‖μ‖ at T = I/d
        let reg = PartialRep::regular(Arc::new(FiniteGroup::cyclic(3)));
        let mu = vec![0.25, 0.5, 0.25];
        let report = dieudonne_check(&reg, &mu, 1e-9).unwrap();
        assert!(report.holds_p1_within_probes);

        // E5 with mass on the zero operator: deficit
        let mu = vec![0.0, 0.0, 1.0, 0.0];
        let report = dieudonne_check(&rep, &mu, 1e-9).unwrap();
        assert!(report.p2_norm < 1e-9);
        assert!(!report.holds_p2);
    }

    #[test]
    fn structural_ops_stay_valid() {
        let e5 = instance_e5();
        let conj = conjugate_rep(&e5);
        assert!(verify_partial_rep(&conj).is_valid());

        let reg = PartialRep::regular(Arc::new(FiniteGroup::cyclic(4)));
        let sum = direct_sum(&e5, &reg).unwrap();
        assert!(verify_partial_rep(&sum).is_valid());
        assert_eq!(sum.dim, 6);

        let prod = tensor(&e5, &conj).unwrap();
        assert!(verify_partial_rep(&prod).is_valid());

        let (sigma, residual) = sigma_rep(&e5);
        assert!(verify_partial_rep(&sigma).is_valid());
        // E5 is star-closed, so σ equals π⊗π̄ entrywise
        assert_eq!(residual, 0.0);
    }

    #[test]
    fn sigma_rep_coefficients_match_tensor() {
        let e5 = instance_e5();
        let (sigma, _) = sigma_rep(&e5);
        let tens = tensor_with_conjugate(&e5).unwrap();
        let mut rng = crate::rng::SplitMix64::new(5);
        for _ in 0..10 {
            let mut t = CMat::zeros(2, 2);
            for i in 0..2 {
                for j in 0..2 {
                    t[(i, j)] = crate::cx::c(rng.f64() - 0.5, rng.f64() - 0.5);
                }
            }
            let v = t.vec();
            for g in 0..4 {
                let lhs = sigma.pi[g].mul(&v).dot(&v);
                let rhs = tens.pi[g].mul(&v).dot(&v);
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn powers_stormer_and_cauchy_schwarz_numerics() {
        // ‖SS* − TT*‖₁ ≤ ‖S−T‖₂(‖S‖₂+‖T‖₂) and ‖|S|−|T|‖₂² ≤ ‖|S|²−|T|²‖₁
        let mut rng = crate::rng::SplitMix64::new(31);
        for _ in 0..12 {
            let mut s = CMat::zeros(3, 3);
            let mut t = CMat::zeros(3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    s[(i, j)] = crate::cx::c(rng.f64() - 0.5, rng.f64() - 0.5);
                    t[(i, j)] = crate::cx::c(rng.f64() - 0.5, rng.f64() - 0.5);
                }
            }
            let lhs = trace_norm(&s.mul(&s.adjoint()).sub(&t.mul(&t.adjoint())));
            let rhs = s.sub(&t).fro_norm() * (s.fro_norm() + t.fro_norm());
            assert!(lhs <= rhs + 1e-9);

            // |S| = (S*S)^{1/2} via eigen
            let abs_of = |m: &CMat| {
                let gram = m.adjoint().mul(m);
                let (vals, vecs) = hermitian_eigen(&gram);
                let roots: Vec<_> = vals.iter().map(|&l| cr(l.max(0.0).sqrt())).collect();
                vecs.mul(&CMat::diag(&roots)).mul(&vecs.adjoint())
            };
            let abs_s = abs_of(&s);
            let abs_t = abs_of(&t);
            let lhs2 = abs_s.sub(&abs_t).fro_norm().powi(2);
            let rhs2 = trace_norm(&abs_s.mul(&abs_s).sub(&abs_t.mul(&abs_t)));
            assert!(lhs2 <= rhs2 + 1e-9);
        }
    }

    #[test]
    fn subrep_restriction_checks_invariance() {
        let reg = PartialRep::regular(Arc::new(FiniteGroup::cyclic(4)));
        let ones =
            CMat::from_rows(vec![vec![cr(1.0)], vec![cr(1.0)], vec![cr(1.0)], vec![cr(1.0)]]);
        let sub = subrep_restrict(&reg, &[ones]).unwrap();
        assert_eq!(sub.dim, 1);
        assert!(verify_partial_rep(&sub).is_valid());

        let bad =
            CMat::from_rows(vec![vec![cr(1.0)], vec![cr(0.0)], vec![cr(0.0)], vec![cr(0.0)]]);
        assert!(matches!(subrep_restrict(&reg, &[bad]), Err(Error::NotInvariantSubspace(_))));
    }

    #[test]
    fn restrict_and_quotient() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let rep = PartialRep::regular(z4.clone());
        let h = crate::group::subgroup_closure(&z4, &[2]).unwrap();
        let restricted = restrict_to_subgroup(&rep, &h).unwrap();
        assert!(verify_partial_rep(&restricted).is_valid());

        // quotient by the trivial subgroup is the same rep
        let trivial = crate::group::subgroup_closure(&z4, &[]).unwrap();
        let q = quotient_rep(&rep, &trivial).unwrap();
        assert_eq!(q.group.order, 4);
        assert!(verify_partial_rep(&q).is_valid());

        // ℤ/4 rep with π_2 = I quotients to ℤ/2
        let chi2 = PartialRep::character_zn(z4.clone(), 2); // t ↦ (−1)^t
        let h2 = crate::group::subgroup_closure(&z4, &[2]).unwrap();
        let q = quotient_rep(&chi2, &h2).unwrap();
        assert_eq!(q.group.order, 2);
        assert!(verify_partial_rep(&q).is_valid());
        // kernel condition rejected when π_2 ≠ I
        let chi1 = PartialRep::character_zn(z4, 1);
        assert!(matches!(quotient_rep(&chi1, &h2), Err(Error::KernelCondition(2))));
    }

    #[test]
    fn eymard_examples() {
        // trivial action + identity rep: constant section is invariant and
        // the mean point is fixed
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let action = PartialAction::global(z2.clone(), vec![vec![0, 1], vec![0, 1]]).unwrap();
        let rep = PartialRep::identity_rep(z2, 2);
        let eta = CMat::from_real_rows(vec![vec![1.0, 1.0], vec![2.0, 2.0]]);
        let mu = vec![rat(1, 2), rat(1, 2)];
        let (a, residuals) = eymard_fixed_point(&rep, &action, &eta, &mu).unwrap();
        assert!((a[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!((a[(1, 0)].re - 2.0).abs() < 1e-12);
        assert!(residuals.iter().all(|&r| r < 1e-12));

        // η ≡ 0 is invariant with fixed point 0
        let e1 = instance_e1();
        let e5 = instance_e5();
        let zero = CMat::zeros(2, 2);
        let (a, residuals) = eymard_fixed_point(&e5, &e1, &zero, &mu).unwrap();
        assert_eq!(a.max_abs(), 0.0);
        assert!(residuals.iter().all(|&r| r == 0.0));

        // E1 Koopman-dual δ-section: invariant, a = (1/2, 1/2); the
        // fixed-point identity of the global statement fails at s = 1
        // because the mean integral only reaches X_s — measured, not hidden
        let delta = CMat::identity(2);
        let (a, residuals) = eymard_fixed_point(&e5, &e1, &delta, &mu).unwrap();
        assert!((a[(0, 0)].re - 0.5).abs() < 1e-12);
        assert!((a[(1, 0)].re - 0.5).abs() < 1e-12);
        assert!(residuals[1] > 0.4, "gap must be visible: {residuals:?}");

        // non-invariant section is rejected with a witness
        let bad = CMat::from_real_rows(vec![vec![1.0, 0.0], vec![0.0, 2.0]]);
        assert!(matches!(
            eymard_fixed_point(&e5, &e1, &bad, &mu),
            Err(Error::SectionNotInvariant { .. })
        ));
    }
}
