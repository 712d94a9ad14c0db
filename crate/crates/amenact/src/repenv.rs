//! Enveloping (global) representation of a partial representation on the
//! quotient (𝔽[G]⊗E)/Z, with the restriction data (ι, q) and the universal
//! morphism ψ to any other restriction quadruple.
//!
//! Z is spanned by δ_t⊗x − δ_s⊗π_{s⁻¹t}(x) for x ranging over a basis of
//! E_{t⁻¹s} = range(p_{t⁻¹s}); row reduction of that spanning set gives the
//! quotient coordinates. Norm verification uses the Euclidean surrogate of
//! the projective tensor norm; the algebraic identities are checked to
//! solver precision.

use crate::cx::{cr, rref, CMat};
use crate::error::{Error, Result};
use crate::prep::{verify_partial_rep, PartialRep};

const QTOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct EnvelopingRep {
    pub base: PartialRep,
    /// dimension of the quotient F = (𝔽[G]⊗E)/Z
    pub dim_f: usize,
    pub dim_z: usize,
    /// pivot-free coordinates of W = ℂ^{|G|·d} indexing the quotient basis
    pub free_coords: Vec<usize>,
    /// RREF rows of Z with their pivot columns, for canonical reduction
    z_rows: CMat,
    z_pivots: Vec<usize>,
    /// ρ_t on quotient coordinates
    pub rho: Vec<CMat>,
    /// ι : E → F
    pub iota: CMat,
    /// q : F → E
    pub q: CMat,
    pub report: EnvReport,
}

#[derive(Debug, Clone, Default)]
pub struct EnvReport {
    /// (i) q∘ι = id_E
    pub qi_residual: f64,
    /// (ii) ρ_tρ_s = ρ_{ts}
    pub rep_law_residual: f64,
    /// (iii) ι(q(ρ_tι(x))) = ρ_tι(x) on a basis of E_{t⁻¹} (the scope the
    /// universal-map proof uses; holds by the Z-relations)
    pub iii_scoped_residual: f64,
    /// (iii) quantified over all of E: fails on rank-deficient instances
    /// (recorded, not asserted)
    pub iii_global_residual: f64,
    /// (iv) ‖q(ρ_tι(x))‖ ≤ ‖x‖ on basis and random probes (Euclidean)
    pub norm_bound_excess: f64,
    /// Res_ι^q(ρ) = π entrywise
    pub res_residual: f64,
    /// ρ_t(Z) = Z via generator images
    pub z_invariance_residual: f64,
}

fn basis_of_range(p: &CMat, tol: f64) -> Vec<CMat> {
    let (_, pivots) = rref(p, tol);
    pivots.iter().map(|&j| p.column(j)).collect()
}

impl EnvelopingRep {
    fn w_dim(&self) -> usize {
        self.base.group.order * self.base.dim
    }

    /// Reduces a W-vector modulo Z to its canonical (pivot-free) form.
    fn reduce_w(&self, w: &CMat) -> CMat {
        let mut v = w.clone();
        for (row, &pcol) in self.z_pivots.iter().enumerate() {
            let coeff = v[(pcol, 0)];
            if coeff.norm() <= 1e-300 {
                continue;
            }
            for j in 0..self.w_dim() {
                let delta = self.z_rows[(row, j)] * coeff;
                v[(j, 0)] -= delta;
            }
        }
        v
    }

    /// Quotient coordinates of a W-vector.
    pub fn project(&self, w: &CMat) -> CMat {
        let v = self.reduce_w(w);
        let mut out = CMat::zeros(self.dim_f, 1);
        for (i, &c) in self.free_coords.iter().enumerate() {
            out[(i, 0)] = v[(c, 0)];
        }
        out
    }

    /// δ_t ⊗ x as a W-vector.
    pub fn delta_tensor(&self, t: usize, x: &CMat) -> CMat {
        let d = self.base.dim;
        let mut w = CMat::zeros(self.w_dim(), 1);
        for i in 0..d {
            w[(t * d + i, 0)] = x[(i, 0)];
        }
        w
    }
}

pub fn rep_globalize(rep: &PartialRep) -> Result<EnvelopingRep> {
    if !verify_partial_rep(rep).is_valid() {
        return Err(Error::NotVerified("rep_globalize", "partial representation"));
    }
    let g = rep.group.clone();
    let n = g.order;
    let d = rep.dim;
    let wd = n * d;

    // spanning set of Z as rows
    let mut gen_rows: Vec<Vec<crate::cx::C>> = Vec::new();
    for t in g.elements() {
        for s in g.elements() {
            if t == s {
                continue;
            }
            let ts = g.mul(g.inv(t), s); // t⁻¹s
            let p_range = basis_of_range(&rep.p(ts), QTOL);
            let st = g.inv(ts); // s⁻¹t
            for x in &p_range {
                let px = rep.pi[st].mul(x);
                let mut row = vec![cr(0.0); wd];
                for i in 0..d {
                    row[t * d + i] += x[(i, 0)];
                    row[s * d + i] -= px[(i, 0)];
                }
                gen_rows.push(row);
            }
        }
    }
    let gen_mat = if gen_rows.is_empty() {
        CMat::zeros(0, wd)
    } else {
        CMat::from_rows(gen_rows)
    };
    let (reduced, pivots) = rref(&gen_mat, QTOL);
    let dim_z = pivots.len();
    let z_rows = {
        let mut rows = Vec::with_capacity(dim_z);
        for r in 0..dim_z {
            rows.push((0..wd).map(|j| reduced[(r, j)]).collect());
        }
        if rows.is_empty() {
            CMat::zeros(0, wd)
        } else {
            CMat::from_rows(rows)
        }
    };
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free_coords: Vec<usize> = (0..wd).filter(|c| !pivot_set.contains(c)).collect();
    let dim_f = free_coords.len();

    let mut env = EnvelopingRep {
        base: rep.clone(),
        dim_f,
        dim_z,
        free_coords,
        z_rows,
        z_pivots: pivots,
        rho: Vec::new(),
        iota: CMat::zeros(dim_f, d),
        q: CMat::zeros(d, dim_f),
        report: EnvReport::default(),
    };

    // ρ_t: left translation on the first leg, pushed to quotient coordinates
    let lift = |env: &EnvelopingRep, j: usize| -> CMat {
        let mut w = CMat::zeros(wd, 1);
        w[(env.free_coords[j], 0)] = cr(1.0);
        w
    };
    let translate = |w: &CMat, t: usize| -> CMat {
        let mut out = CMat::zeros(wd, 1);
        for s in 0..n {
            let ts = g.mul(t, s);
            for i in 0..d {
                out[(ts * d + i, 0)] = w[(s * d + i, 0)];
            }
        }
        out
    };
    let mut rho = Vec::with_capacity(n);
    for t in g.elements() {
        let mut m = CMat::zeros(dim_f, dim_f);
        for j in 0..dim_f {
            let col = env.project(&translate(&lift(&env, j), t));
            m.set_column(j, &col);
        }
        rho.push(m);
    }
    env.rho = rho;

    // ι(x) = [δ_e ⊗ x], q([δ_t ⊗ x]) = π_t(x) via the canonical representative
    let mut iota = CMat::zeros(dim_f, d);
    for i in 0..d {
        let mut x = CMat::zeros(d, 1);
        x[(i, 0)] = cr(1.0);
        iota.set_column(i, &env.project(&env.delta_tensor(g.identity, &x)));
    }
    env.iota = iota;

    // q̂ on W: block t is π_t; on the quotient apply q̂ to the canonical lift
    let mut qhat = CMat::zeros(d, wd);
    for t in g.elements() {
        for i in 0..d {
            for r in 0..d {
                qhat[(r, t * d + i)] = rep.pi[t][(r, i)];
            }
        }
    }
    // q̂ must kill Z (then q is well-defined on the quotient)
    let mut z_kill: f64 = 0.0;
    for r in 0..env.dim_z {
        let mut zr = CMat::zeros(wd, 1);
        for j in 0..wd {
            zr[(j, 0)] = env.z_rows[(r, j)];
        }
        z_kill = z_kill.max(qhat.mul(&zr).max_abs());
    }
    if z_kill > 1e-8 {
        return Err(Error::Invalid(format!("q does not vanish on Z (residual {z_kill})")));
    }
    let mut q = CMat::zeros(d, dim_f);
    for j in 0..dim_f {
        q.set_column(j, &qhat.mul(&lift(&env, j)));
    }
    env.q = q;

    env.report = verify_envelope(&env)?;
    Ok(env)
}

fn verify_envelope(env: &EnvelopingRep) -> Result<EnvReport> {
    let g = &env.base.group;
    let d = env.base.dim;
    let mut report = EnvReport::default();

    // (i) q∘ι = id exactly (to reduction precision)
    report.qi_residual = env.q.mul(&env.iota).sub(&CMat::identity(d)).max_abs();

    // (ii) genuine representation on the quotient
    for t in g.elements() {
        for s in g.elements() {
            let lhs = env.rho[t].mul(&env.rho[s]);
            let rhs = &env.rho[g.mul(t, s)];
            report.rep_law_residual = report.rep_law_residual.max(lhs.sub(rhs).max_abs());
        }
    }

    // Res_ι^q(ρ) = π
    for t in g.elements() {
        let res = env.q.mul(&env.rho[t]).mul(&env.iota).sub(&env.base.pi[t]).max_abs();
        report.res_residual = report.res_residual.max(res);
    }

    // (iii) scoped to E_{t⁻¹}: ιqρ_tι(x) = ρ_tι(x) for x in range(p_{t⁻¹})
    for t in g.elements() {
        let p_range = basis_of_range(&env.base.p(g.inv(t)), QTOL);
        for x in &p_range {
            let rx = env.rho[t].mul(&env.iota).mul(x);
            let lhs = env.iota.mul(&env.q).mul(&rx);
            report.iii_scoped_residual = report.iii_scoped_residual.max(lhs.sub(&rx).max_abs());
        }
        // global scope: all basis vectors (recorded, not asserted)
        for i in 0..d {
            let mut x = CMat::zeros(d, 1);
            x[(i, 0)] = cr(1.0);
            let rx = env.rho[t].mul(&env.iota).mul(&x);
            let lhs = env.iota.mul(&env.q).mul(&rx);
            report.iii_global_residual = report.iii_global_residual.max(lhs.sub(&rx).max_abs());
        }
    }

    // (iv) ‖q(ρ_tι(x))‖ ≤ ‖x‖ on basis + seeded random probes (Euclidean
    // surrogate of the projective-norm statement)
    let mut rng = crate::rng::SplitMix64::new(17);
    let mut probes: Vec<CMat> = (0..d)
        .map(|i| {
            let mut x = CMat::zeros(d, 1);
            x[(i, 0)] = cr(1.0);
            x
        })
        .collect();
    for _ in 0..8 {
        let mut x = CMat::zeros(d, 1);
        for i in 0..d {
            x[(i, 0)] = crate::cx::c(rng.f64() - 0.5, rng.f64() - 0.5);
        }
        probes.push(x);
    }
    for t in g.elements() {
        for x in &probes {
            let image = env.q.mul(&env.rho[t]).mul(&env.iota).mul(x);
            let excess = image.fro_norm() - x.fro_norm();
            report.norm_bound_excess = report.norm_bound_excess.max(excess);
        }
    }

    // Z is ρ-invariant: translated generators still reduce to zero
    let wd = env.w_dim();
    for t in g.elements() {
        for r in 0..env.dim_z {
            let mut zr = CMat::zeros(wd, 1);
            for j in 0..wd {
                zr[(j, 0)] = env.z_rows[(r, j)];
            }
            // translate on the first leg
            let mut moved = CMat::zeros(wd, 1);
            for s in 0..g.order {
                let ts = g.mul(t, s);
                for i in 0..d {
                    moved[(ts * d + i, 0)] = zr[(s * d + i, 0)];
                }
            }
            let residual = env.project(&moved).max_abs();
            report.z_invariance_residual = report.z_invariance_residual.max(residual);
        }
    }

    if report.qi_residual > 1e-8
        || report.rep_law_residual > 1e-8
        || report.res_residual > 1e-8
        || report.iii_scoped_residual > 1e-8
        || report.z_invariance_residual > 1e-8
    {
        return Err(Error::Invalid(format!(
            "enveloping representation failed verification: {report:?}"
        )));
    }
    Ok(report)
}

/// A candidate (F′, ρ′, ι′, q′) for the universal property.
#[derive(Debug, Clone)]
pub struct RestrictionQuadruple {
    pub dim_f: usize,
    pub rho: Vec<CMat>,
    pub iota: CMat,
    pub q: CMat,
}

impl RestrictionQuadruple {
    pub fn from_envelope(env: &EnvelopingRep) -> Self {
        RestrictionQuadruple {
            dim_f: env.dim_f,
            rho: env.rho.clone(),
            iota: env.iota.clone(),
            q: env.q.clone(),
        }
    }

    /// env ⊕ an extra invariant summand carrying any representation, with
    /// q′ killing the summand; still a restriction quadruple for the same π.
    pub fn with_extra_summand(env: &EnvelopingRep, extra: &[CMat]) -> Self {
        let k = extra.first().map_or(0, |m| m.rows);
        let d = env.base.dim;
        let rho = env.rho.iter().zip(extra).map(|(r, x)| r.dsum(x)).collect();
        let mut iota = CMat::zeros(env.dim_f + k, d);
        for i in 0..env.dim_f {
            for j in 0..d {
                iota[(i, j)] = env.iota[(i, j)];
            }
        }
        let mut q = CMat::zeros(d, env.dim_f + k);
        for i in 0..d {
            for j in 0..env.dim_f {
                q[(i, j)] = env.q[(i, j)];
            }
        }
        RestrictionQuadruple { dim_f: env.dim_f + k, rho, iota, q }
    }
}

/// Verifies a candidate quadruple restricts to the same π: q′ι′ = id, ρ′ a
/// representation, q′ρ′ι′ = π, condition (iii) on E_{t⁻¹}, and the norm
/// bound (iv).
pub fn verify_restriction_quadruple(rep: &PartialRep, cand: &RestrictionQuadruple) -> Result<()> {
    let g = &rep.group;
    let d = rep.dim;
    if cand.rho.len() != g.order || cand.iota.cols != d || cand.q.rows != d {
        return Err(Error::NotRestrictionQuadruple("shape mismatch".into()));
    }
    let qi = cand.q.mul(&cand.iota).sub(&CMat::identity(d)).max_abs();
    if qi > 1e-8 {
        return Err(Error::NotRestrictionQuadruple(format!("q′ι′ ≠ id ({qi})")));
    }
    for t in g.elements() {
        for s in g.elements() {
            let res = cand.rho[t].mul(&cand.rho[s]).sub(&cand.rho[g.mul(t, s)]).max_abs();
            if res > 1e-8 {
                return Err(Error::NotRestrictionQuadruple(format!(
                    "ρ′ is not a representation at ({t},{s})"
                )));
            }
        }
    }
    for t in g.elements() {
        let res = cand.q.mul(&cand.rho[t]).mul(&cand.iota).sub(&rep.pi[t]).max_abs();
        if res > 1e-8 {
            return Err(Error::NotRestrictionQuadruple(format!(
                "q′ρ′ι′ ≠ π at t = {t} ({res})"
            )));
        }
        // (iii) on E_{t⁻¹}
        for x in basis_of_range(&rep.p(g.inv(t)), QTOL) {
            let rx = cand.rho[t].mul(&cand.iota).mul(&x);
            let lhs = cand.iota.mul(&cand.q).mul(&rx);
            let res = lhs.sub(&rx).max_abs();
            if res > 1e-8 {
                return Err(Error::NotRestrictionQuadruple(format!(
                    "condition (iii) fails at t = {t} ({res})"
                )));
            }
        }
        // (iv)
        for i in 0..d {
            let mut x = CMat::zeros(d, 1);
            x[(i, 0)] = cr(1.0);
            let image = cand.q.mul(&cand.rho[t]).mul(&cand.iota).mul(&x);
            if image.fro_norm() > x.fro_norm() + 1e-8 {
                return Err(Error::NotRestrictionQuadruple(format!(
                    "norm bound (iv) fails at t = {t}"
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct UniversalMap {
    pub psi: CMat,
    /// residuals of ψι = ι′, q′ψ = q, ψρ_t = ρ′_tψ, and ψ(Z) = 0
    pub iota_residual: f64,
    pub q_residual: f64,
    pub intertwine_residual: f64,
    pub z_residual: f64,
    /// the span certificate: ρ_tι(e_i) span the quotient, so ψ is unique
    pub span_rank: usize,
}

/// ψ([δ_t⊗x]) := ρ′_t ι′(x), verified well-defined on Z and satisfying both
/// composition identities; uniqueness is certified by the spanning rank of
/// {ρ_t ι(e_i)}.
pub fn universal_map_psi(env: &EnvelopingRep, cand: &RestrictionQuadruple) -> Result<UniversalMap> {
    verify_restriction_quadruple(&env.base, cand)?;
    let g = &env.base.group;
    let d = env.base.dim;
    let wd = env.w_dim();
    // Ψ on W
    let mut psi_w = CMat::zeros(cand.dim_f, wd);
    for t in g.elements() {
        let block = cand.rho[t].mul(&cand.iota); // (dimF' × d)
        for i in 0..d {
            for r in 0..cand.dim_f {
                psi_w[(r, t * d + i)] = block[(r, i)];
            }
        }
    }
    // ψ(Z) = 0
    let mut z_residual: f64 = 0.0;
    for r in 0..env.dim_z {
        let mut zr = CMat::zeros(wd, 1);
        for j in 0..wd {
            zr[(j, 0)] = env.z_rows[(r, j)];
        }
        z_residual = z_residual.max(psi_w.mul(&zr).max_abs());
    }
    if z_residual > 1e-8 {
        return Err(Error::Invalid(format!("ψ not well-defined on Z ({z_residual})")));
    }
    // ψ on quotient coordinates
    let mut psi = CMat::zeros(cand.dim_f, env.dim_f);
    for j in 0..env.dim_f {
        let mut w = CMat::zeros(wd, 1);
        w[(env.free_coords[j], 0)] = cr(1.0);
        psi.set_column(j, &psi_w.mul(&w));
    }

    let iota_residual = psi.mul(&env.iota).sub(&cand.iota).max_abs();
    let q_residual = cand.q.mul(&psi).sub(&env.q).max_abs();
    let mut intertwine_residual: f64 = 0.0;
    for t in g.elements() {
        let res = psi.mul(&env.rho[t]).sub(&cand.rho[t].mul(&psi)).max_abs();
        intertwine_residual = intertwine_residual.max(res);
    }
    // uniqueness: values on ι(E) plus equivariance determine ψ because the
    // vectors ρ_tι(e_i) span the quotient
    let mut span = CMat::zeros(env.dim_f, g.order * d);
    for t in g.elements() {
        let block = env.rho[t].mul(&env.iota);
        for i in 0..d {
            for r in 0..env.dim_f {
                span[(r, t * d + i)] = block[(r, i)];
            }
        }
    }
    let span_rank = crate::cx::rank(&span, 1e-9);
    if span_rank != env.dim_f {
        return Err(Error::Invalid(format!(
            "span certificate failed: rank {span_rank} ≠ dim {}",
            env.dim_f
        )));
    }
    if iota_residual > 1e-8 || q_residual > 1e-8 || intertwine_residual > 1e-8 {
        return Err(Error::Invalid(format!(
            "ψ violates a composition identity: ι {iota_residual}, q {q_residual}, ⋈ {intertwine_residual}"
        )));
    }
    Ok(UniversalMap { psi, iota_residual, q_residual, intertwine_residual, z_residual, span_rank })
}
