//! The audit-report pipeline: per-instance batteries over every claimed
//! equivalence, independent certificate re-verification, and the
//! deterministic suite report.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::action::{
    is_partially_transitive, orbits, verify_partial_action, PartialAction,
};
use crate::envelope::{factor_space, globalize, morphism_verify, restriction_envelope_iso, Morphism};
use crate::error::{Error, Result};
use crate::generators::suite_instances;
use crate::groupoid::{
    amenability_certificate, build_germ_groupoid, pullback_certificate, quotient_morphism,
    s_bijective_check, verify_fiber_certificate, FiberMeasureSystem,
};
use crate::measure::{
    audit_amenability_equivalences, default_k, folner_ratios, folner_satisfied, invariant_measure_solve,
    reiter_defect_exact, reiter_defect_f64, verify_invariant_measure, FolnerMode, MoveSet,
};
use crate::prep::{
    bekka_mean_solve, koopman_build, koopman_covariance_residual, koopman_onb, rep_reiter_solve,
    verify_bekka_mean, verify_partial_rep, verify_rep_reiter, ReiterFlavor, SolveStatus,
};
use crate::ratio::{rat, rat_from_str, rat_to_string, Rat};
use crate::schema::{ActionInput, AuditVerdict, VerdictStatus};

pub const SUITE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub version: String,
    pub seed: u64,
    pub eps: String,
    pub tolerance: f64,
    pub instances: Vec<InstanceAudit>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceAudit {
    pub id: String,
    pub verdicts: Vec<AuditVerdict>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub na: usize,
    /// ids of failed MUST-PASS checks (expected-to-fail audits excluded)
    pub must_pass_failures: Vec<String>,
}

/// Audits that are EXPECTED to fail on some instances: they document
/// equivalences that break for genuinely partial actions at finite scale
/// and do not gate the suite.
pub fn is_expected_failure(id: &str) -> bool {
    matches!(
        id,
        "amen-equiv/iv-folner-literal"
            | "amen-equiv/v=>iv-literal"
            | "claims/restriction-implies-pt"
            | "groupoid/quotient-s-bijective"
            | "reiter2/bekka=>P1"
            | "factor/alpha-tilde-valid"
    )
}

/// Runs every battery on one instance.
pub fn audit_instance(id: &str, input: &ActionInput, eps: &Rat) -> Vec<AuditVerdict> {
    match input {
        ActionInput::Finite(a) => audit_finite(id, a, eps),
        ActionInput::Free(f) => {
            let mut out = Vec::new();
            let full = MoveSet::from_free_closure(f);
            let k = MoveSet::from_free_ball(f, 2);
            out.extend(audit_amenability_equivalences(id, &full, &k, eps));
            for claim in [
                "groupoid/certificate-defect-0",
                "koopman/verify",
                "koopman/bekka-identity-mean",
                "wcrei/both-directions",
            ] {
                out.push(AuditVerdict::na(claim, id, "free context: quantifies over all of G"));
            }
            out
        }
    }
}

fn audit_finite(id: &str, a: &PartialAction, eps: &Rat) -> Vec<AuditVerdict> {
    let mut out = Vec::new();

    let valid = verify_partial_action(a);
    out.push(AuditVerdict::of(
        "action/valid",
        id,
        valid.is_valid(),
        serde_json::json!({ "violations": valid.violations.len() }),
    ));
    if !valid.is_valid() {
        return out;
    }

    // amenability-equivalence battery
    let full = MoveSet::from_action_full(a);
    let k_elems = default_k(a);
    let k = MoveSet::from_action_k(a, &k_elems);
    out.extend(audit_amenability_equivalences(id, &full, &k, eps));

    // partial transitivity: the claim that restrictions always satisfy it
    let (pt, witness) = is_partially_transitive(a);
    out.push(AuditVerdict::of(
        "claims/restriction-implies-pt",
        id,
        pt,
        serde_json::json!({ "witness": witness.map(|(s, t, x)| vec![s, t, x]) }),
    ));

    // globalization invariants: envelope exists and, for restriction
    // instances, is isomorphic to the orbit sub-action (checked separately
    // in the acceptance suite; here the envelope re-verification suffices)
    match globalize(a) {
        Ok(env) => {
            out.push(AuditVerdict::pass("envelope/verified", id));
            let orbit_count = orbits(a).orbits.len();
            out.push(AuditVerdict {
                id: "envelope/class-count".into(),
                instance: id.into(),
                status: VerdictStatus::Pass,
                witness: serde_json::json!({ "classes": env.class_count(), "orbits": orbit_count }),
            });
        }
        Err(e) => out.push(AuditVerdict::fail(
            "envelope/verified",
            id,
            serde_json::json!({ "error": e.to_string() }),
        )),
    }

    // germ groupoid + exact amenability certificate
    match build_germ_groupoid(a) {
        Ok(gg) => match amenability_certificate(&gg.groupoid) {
            Ok((_, verification)) => {
                out.push(AuditVerdict::of(
                    "groupoid/certificate-defect-0",
                    id,
                    verification.defect == rat(0, 1),
                    serde_json::json!({ "defect": rat_to_string(&verification.defect) }),
                ));
            }
            Err(e) => out.push(AuditVerdict::fail(
                "groupoid/certificate-defect-0",
                id,
                serde_json::json!({ "error": e.to_string() }),
            )),
        },
        Err(e) => out.push(AuditVerdict::fail(
            "groupoid/certificate-defect-0",
            id,
            serde_json::json!({ "error": e.to_string() }),
        )),
    }

    // quotient morphism onto the factor: s-bijectivity verdict and, when it
    // holds, exact pullback of the factor's certificate
    match factor_space(a) {
        Ok(factor) => {
            out.push(AuditVerdict::of(
                "factor/alpha-tilde-valid",
                id,
                factor.validity.is_valid(),
                serde_json::json!({
                    "violations": factor.validity.violations.iter().map(|v| v.axiom.clone()).collect::<Vec<_>>()
                }),
            ));
            if factor.validity.is_valid() {
                let gg = build_germ_groupoid(a);
                let hh = build_germ_groupoid(&factor.action);
                if let (Ok(gg), Ok(hh)) = (gg, hh) {
                    match quotient_morphism(a, &factor, &gg, &hh)
                        .and_then(|rho| {
                            s_bijective_check(&rho, &gg.groupoid, &hh.groupoid)
                                .map(|rep| (rho, rep))
                        }) {
                        Ok((rho, rep)) => {
                            out.push(AuditVerdict::of(
                                "groupoid/quotient-s-bijective",
                                id,
                                rep.s_bijective,
                                serde_json::json!({ "witnesses": rep.s_witnesses.len() }),
                            ));
                            if rep.s_bijective {
                                let (hcert, _) = amenability_certificate(&hh.groupoid)
                                    .expect("factor groupoid certificate");
                                let pulled = pullback_certificate(
                                    &rho,
                                    &gg.groupoid,
                                    &hh.groupoid,
                                    &hcert,
                                );
                                out.push(AuditVerdict::of(
                                    "groupoid/pullback-reverifies",
                                    id,
                                    pulled
                                        .map(|(_, v)| v.defect == rat(0, 1))
                                        .unwrap_or(false),
                                    serde_json::Value::Null,
                                ));
                            }
                        }
                        Err(e) => out.push(AuditVerdict::fail(
                            "groupoid/quotient-s-bijective",
                            id,
                            serde_json::json!({ "error": e.to_string() }),
                        )),
                    }
                }
            } else {
                out.push(AuditVerdict::na(
                    "groupoid/quotient-s-bijective",
                    id,
                    "factor action is not a valid partial action on this instance",
                ));
            }
        }
        Err(e) => out.push(AuditVerdict::fail(
            "factor/alpha-tilde-valid",
            id,
            serde_json::json!({ "error": e.to_string() }),
        )),
    }

    // Koopman correspondence
    match koopman_build(a) {
        Ok(rep) => {
            let report = verify_partial_rep(&rep);
            out.push(AuditVerdict::of(
                "koopman/verify",
                id,
                report.is_valid() && report.max_residual < 1e-12,
                serde_json::json!({ "max_residual": report.max_residual }),
            ));
            let cov = koopman_covariance_residual(a, &rep);
            let cov_ok = if a.counting_weights() { cov == 0.0 } else { cov < 1e-12 };
            out.push(AuditVerdict::of(
                "koopman/mult-covariance",
                id,
                cov_ok,
                serde_json::json!({ "residual": cov }),
            ));

            // Bekka feasibility on the orthonormal picture
            let onb = koopman_onb(a).expect("valid action");
            let (id_mean, _) = bekka_mean_solve(&onb).expect("dim > 0");
            let mean_report = verify_bekka_mean(&onb, &id_mean.matrix).expect("shape");
            out.push(AuditVerdict::of(
                "koopman/bekka-identity-mean",
                id,
                mean_report.ok && mean_report.max_invariance_residual == 0.0,
                serde_json::json!({ "residual": mean_report.max_invariance_residual }),
            ));

            // Greenleaf measure → rank-one Bekka mean (both verified)
            let im = invariant_measure_solve(&full);
            let f: Vec<f64> = im
                .mu
                .iter()
                .zip(&a.weights)
                .map(|(m, w)| (crate::ratio::rat_to_f64(m) / crate::ratio::rat_to_f64(w)).sqrt())
                .collect();
            // in the ONB picture the defect-0 vector is sqrt(μ) itself
            let f_onb: Vec<f64> =
                im.mu.iter().map(|m| crate::ratio::rat_to_f64(m).sqrt()).collect();
            let _ = f;
            match crate::prep::mean_from_reiter_vector(&onb, &f_onb) {
                Ok(mean) => {
                    let rep_ok = verify_bekka_mean(&onb, &mean.matrix).map(|r| r.ok).unwrap_or(false);
                    out.push(AuditVerdict::of(
                        "koopman/greenleaf-to-bekka",
                        id,
                        rep_ok,
                        serde_json::Value::Null,
                    ));
                }
                Err(e) => out.push(AuditVerdict::fail(
                    "koopman/greenleaf-to-bekka",
                    id,
                    serde_json::json!({ "error": e.to_string() }),
                )),
            }

            // Prop-"Reiter2" audit: Bekka-amenable but (P₁) obstructed when
            // some π_t vanishes on K = all of G
            let k_all: Vec<usize> = a.group.elements().collect();
            match rep_reiter_solve(&onb, &k_all, 1, ReiterFlavor::Positive) {
                Ok(cert) => {
                    let verified = verify_rep_reiter(&onb, &k_all, &cert).is_ok();
                    match cert.status {
                        SolveStatus::InfeasibleLowerBound => {
                            out.push(AuditVerdict::fail(
                                "reiter2/bekka=>P1",
                                id,
                                serde_json::json!({
                                    "zero_operator_at": cert.obstruction,
                                    "defect_lower_bound": 1.0,
                                    "bekka_mean_residual": mean_report.max_invariance_residual,
                                    "witness_verified": verified,
                                }),
                            ));
                        }
                        _ => {
                            out.push(AuditVerdict::of(
                                "reiter2/bekka=>P1",
                                id,
                                verified && cert.achieved <= crate::ratio::rat_to_f64(eps) + 1e-9,
                                serde_json::json!({ "achieved": cert.achieved }),
                            ));
                        }
                    }
                }
                Err(e) => out.push(AuditVerdict::fail(
                    "reiter2/bekka=>P1",
                    id,
                    serde_json::json!({ "error": e.to_string() }),
                )),
            }

            // wcrei both directions on the Koopman representation
            match crate::induct::wcrei_audit(&onb, &k_elems, 1e-8) {
                Ok(audit) => out.push(AuditVerdict::of(
                    "wcrei/both-directions",
                    id,
                    audit.forward_ok && audit.backward_ok,
                    serde_json::json!({
                        "ptilde2_defect": audit.ptilde2_defect,
                        "tensor_trivial_defect": audit.tensor_trivial_defect,
                    }),
                )),
                Err(e) => out.push(AuditVerdict::fail(
                    "wcrei/both-directions",
                    id,
                    serde_json::json!({ "error": e.to_string() }),
                )),
            }
        }
        Err(e) => out.push(AuditVerdict::fail(
            "koopman/verify",
            id,
            serde_json::json!({ "error": e.to_string() }),
        )),
    }

    out
}

/// Deterministic full-suite run: builtin instances plus any provided ones.
pub fn run_suite(
    seed: u64,
    eps: &Rat,
    extra: &[(String, ActionInput)],
) -> SuiteReport {
    let mut instances = suite_instances(seed, 6);
    instances.extend(extra.iter().cloned());
    run_suite_on(seed, eps, instances)
}

/// Runs the batteries on exactly the given instances (a bundle directory
/// run); an empty list yields an empty passing report.
pub fn run_suite_on(
    seed: u64,
    eps: &Rat,
    instances: Vec<(String, ActionInput)>,
) -> SuiteReport {
    let mut audits = Vec::new();
    let mut summary = Summary::default();
    for (id, input) in &instances {
        let verdicts = audit_instance(id, input, eps);
        for v in &verdicts {
            match v.status {
                VerdictStatus::Pass => summary.pass += 1,
                VerdictStatus::NotApplicable => summary.na += 1,
                VerdictStatus::Fail => {
                    summary.fail += 1;
                    if !is_expected_failure(&v.id) {
                        summary.must_pass_failures.push(format!("{id}: {}", v.id));
                    }
                }
            }
        }
        audits.push(InstanceAudit { id: id.clone(), verdicts });
    }
    audits.sort_by(|a, b| a.id.cmp(&b.id));
    SuiteReport {
        version: SUITE_VERSION.into(),
        seed,
        eps: rat_to_string(eps),
        tolerance: crate::prep::DEFAULT_TOL,
        instances: audits,
        summary,
    }
}

// ---- certificates: schema + independent re-verification ----

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum CertificateSchema {
    InvariantMeasure {
        mu: Vec<String>,
    },
    Folner {
        subset: Vec<usize>,
        mode: String,
        eps: String,
    },
    Reiter {
        p: u8,
        f: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        f_exact: Option<Vec<String>>,
        declared_defect: f64,
    },
    GroupoidMeasures {
        /// unit ↦ (arrow index ↦ mass)
        measures: Vec<std::collections::BTreeMap<String, String>>,
    },
    BekkaMean {
        matrix: Vec<Vec<[f64; 2]>>,
    },
}

/// Independent re-verification: never trusts solver output, recomputes every
/// declared quantity from the instance.
pub fn certify(cert: &CertificateSchema, input: &ActionInput) -> Result<AuditVerdict> {
    let instance_label = "certify-target";
    match cert {
        CertificateSchema::InvariantMeasure { mu } => {
            let moves = match input {
                ActionInput::Finite(a) => MoveSet::from_action_full(a),
                ActionInput::Free(f) => MoveSet::from_free_closure(f),
            };
            let mu: Vec<Rat> = mu.iter().map(|s| rat_from_str(s)).collect::<Result<_>>()?;
            let ok = verify_invariant_measure(&moves, &mu);
            Ok(AuditVerdict::of(
                "certify/invariant-measure",
                instance_label,
                ok.is_ok(),
                match ok {
                    Ok(()) => serde_json::Value::Null,
                    Err(e) => serde_json::json!({ "error": e.to_string() }),
                },
            ))
        }
        CertificateSchema::Folner { subset, mode, eps } => {
            let moves = match input {
                ActionInput::Finite(a) => {
                    let k = default_k(a);
                    MoveSet::from_action_k(a, &k)
                }
                ActionInput::Free(f) => MoveSet::from_free_ball(f, 2),
            };
            let mode = match mode.as_str() {
                "literal" => FolnerMode::Literal,
                "corrected" => FolnerMode::Corrected,
                other => return Err(Error::Invalid(format!("unknown Følner mode {other:?}"))),
            };
            let eps = rat_from_str(eps)?;
            let mut mask = vec![false; moves.set_size];
            for &x in subset {
                if x >= moves.set_size {
                    return Err(Error::Invalid("subset element out of range".into()));
                }
                mask[x] = true;
            }
            let ratios = folner_ratios(&moves, &mask, mode);
            let ok = !moves.mass_of(&mask).eq(&rat(0, 1)) && folner_satisfied(&ratios, &eps);
            Ok(AuditVerdict::of(
                "certify/folner",
                instance_label,
                ok,
                serde_json::json!({
                    "ratios": ratios
                        .iter()
                        .map(|(l, s, d)| (l.clone(), rat_to_string(s), rat_to_string(d)))
                        .collect::<Vec<_>>()
                }),
            ))
        }
        CertificateSchema::Reiter { p, f, f_exact, declared_defect } => {
            let moves = match input {
                ActionInput::Finite(a) => {
                    let k = default_k(a);
                    MoveSet::from_action_k(a, &k)
                }
                ActionInput::Free(fr) => MoveSet::from_free_ball(fr, 2),
            };
            let recomputed = reiter_defect_f64(&moves, f, *p);
            let mut ok = (recomputed - declared_defect).abs()
                <= 1e-12 * declared_defect.abs().max(1.0);
            if let Some(fe) = f_exact {
                let fe: Vec<Rat> = fe.iter().map(|s| rat_from_str(s)).collect::<Result<_>>()?;
                if let Some(exact) = reiter_defect_exact(&moves, &fe, *p) {
                    ok = ok && crate::ratio::rat_to_f64(&exact) <= declared_defect + 1e-12;
                }
            }
            Ok(AuditVerdict::of(
                "certify/reiter",
                instance_label,
                ok,
                serde_json::json!({ "recomputed": recomputed, "declared": declared_defect }),
            ))
        }
        CertificateSchema::GroupoidMeasures { measures } => {
            let ActionInput::Finite(a) = input else {
                return Err(Error::FreeContextRejected("groupoid certificate"));
            };
            let gg = build_germ_groupoid(a)?;
            let parsed: Vec<std::collections::BTreeMap<usize, Rat>> = measures
                .iter()
                .map(|m| {
                    m.iter()
                        .map(|(k, v)| {
                            let arrow: usize = k
                                .parse()
                                .map_err(|_| Error::Invalid(format!("bad arrow key {k:?}")))?;
                            Ok((arrow, rat_from_str(v)?))
                        })
                        .collect::<Result<_>>()
                })
                .collect::<Result<_>>()?;
            let system = FiberMeasureSystem { measures: parsed };
            let verification = verify_fiber_certificate(&gg.groupoid, &system)?;
            Ok(AuditVerdict::of(
                "certify/groupoid-measures",
                instance_label,
                verification.defect == rat(0, 1),
                serde_json::json!({ "defect": rat_to_string(&verification.defect) }),
            ))
        }
        CertificateSchema::BekkaMean { matrix } => {
            let ActionInput::Finite(a) = input else {
                return Err(Error::FreeContextRejected("Bekka mean certificate"));
            };
            let rep = koopman_onb(a)?;
            let m = crate::cx::CMat::from_rows(
                matrix
                    .iter()
                    .map(|row| row.iter().map(|&[re, im]| crate::cx::c(re, im)).collect())
                    .collect(),
            );
            let report = verify_bekka_mean(&rep, &m)?;
            Ok(AuditVerdict::of(
                "certify/bekka-mean",
                instance_label,
                report.ok,
                serde_json::json!({
                    "trace_error": report.trace_error,
                    "trace_norm_error": report.trace_norm_error,
                    "invariance_residual": report.max_invariance_residual,
                }),
            ))
        }
    }
}

/// Globalization leg of the acceptance battery for a restriction instance:
/// the envelope is isomorphic to the orbit sub-action via [x,t] ↦ β_t(x).
pub fn check_restriction_globalization(
    ambient: &PartialAction,
    subset: &[usize],
) -> Result<usize> {
    let (restricted, labels) = crate::action::restrict_global(ambient, subset)?;
    let env = globalize(&restricted)?;
    let iso = restriction_envelope_iso(&env, ambient, &labels)?;
    // ι into the envelope is a morphism (by construction, re-checked)
    let env_action = env.as_global_action();
    let iota = Morphism { map: env.iota.clone() };
    let report = morphism_verify(&iota, &restricted, &env_action);
    if !report.is_valid() {
        return Err(Error::Invalid("ι failed morphism verification".into()));
    }
    Ok(iso.orbit_labels.len())
}

pub fn write_report(report: &SuiteReport, path: &Path) -> Result<()> {
    crate::schema::write_json(path, report)
}

/// Every criterion the suite treats as MUST-PASS holds; expected paper-gap
/// failures are excluded.
pub fn suite_passes(report: &SuiteReport) -> bool {
    report.summary.must_pass_failures.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::rotation_action;
    use crate::prep::instance_e5;

    #[test]
    fn builtin_suite_is_deterministic_and_passes() {
        let eps = rat(1, 2);
        let r1 = run_suite(0, &eps, &[]);
        let r2 = run_suite(0, &eps, &[]);
        let s1 = serde_json::to_string(&r1).unwrap();
        let s2 = serde_json::to_string(&r2).unwrap();
        assert_eq!(s1, s2, "suite must be byte-identical for a fixed seed");
        assert!(
            suite_passes(&r1),
            "unexpected failures: {:?}",
            r1.summary.must_pass_failures
        );
        assert!(r1.summary.pass + r1.summary.fail + r1.summary.na >= 30);

        // E1 must exhibit the literal-Følner gap
        let e1 = r1.instances.iter().find(|i| i.id.starts_with("E1")).unwrap();
        let literal = e1
            .verdicts
            .iter()
            .find(|v| v.id == "amen-equiv/iv-folner-literal")
            .unwrap();
        assert_eq!(literal.status, VerdictStatus::Fail);
        // ... and the Bekka ⇒ P1 gap via the Koopman zero operator
        let gap = e1.verdicts.iter().find(|v| v.id == "reiter2/bekka=>P1").unwrap();
        assert_eq!(gap.status, VerdictStatus::Fail);
    }

    #[test]
    fn certify_round_trip() {
        let a = crate::action::instance_e1();
        let input = ActionInput::Finite(a.clone());

        let moves = MoveSet::from_action_full(&a);
        let im = invariant_measure_solve(&moves);
        let cert = CertificateSchema::InvariantMeasure {
            mu: im.mu.iter().map(rat_to_string).collect(),
        };
        assert_eq!(certify(&cert, &input).unwrap().status, VerdictStatus::Pass);

        // tampered measure fails
        let cert = CertificateSchema::InvariantMeasure {
            mu: vec!["1/3".into(), "2/3".into()],
        };
        assert_eq!(certify(&cert, &input).unwrap().status, VerdictStatus::Fail);

        // corrected-mode Følner: F = X with defect 0
        let cert = CertificateSchema::Folner {
            subset: vec![0, 1],
            mode: "corrected".into(),
            eps: "1/2".into(),
        };
        assert_eq!(certify(&cert, &input).unwrap().status, VerdictStatus::Pass);

        // defect-0 Reiter
        let cert = CertificateSchema::Reiter {
            p: 1,
            f: vec![0.5, 0.5],
            f_exact: Some(vec!["1/2".into(), "1/2".into()]),
            declared_defect: 0.0,
        };
        assert_eq!(certify(&cert, &input).unwrap().status, VerdictStatus::Pass);

        // groupoid measures from the exact certificate
        let gg = build_germ_groupoid(&a).unwrap();
        let (fibers, _) = amenability_certificate(&gg.groupoid).unwrap();
        let cert = CertificateSchema::GroupoidMeasures { measures: fibers.to_strings() };
        assert_eq!(certify(&cert, &input).unwrap().status, VerdictStatus::Pass);

        // Bekka mean I/2 on the Koopman picture
        let cert = CertificateSchema::BekkaMean {
            matrix: vec![vec![[0.5, 0.0], [0.0, 0.0]], vec![[0.0, 0.0], [0.5, 0.0]]],
        };
        assert_eq!(certify(&cert, &input).unwrap().status, VerdictStatus::Pass);
    }

    #[test]
    fn restriction_globalization_check() {
        let rot = rotation_action(4);
        // E1: envelope ≅ full rotation orbit (4 points)
        assert_eq!(check_restriction_globalization(&rot, &[0, 1]).unwrap(), 4);
    }

    #[test]
    fn e5_reiter2_gap_is_reported_with_verified_witness() {
        // the exact shape of acceptance criterion 8 on E5 = Koopman(E1)
        let rep = instance_e5();
        let k: Vec<usize> = (0..4).collect();
        let cert = rep_reiter_solve(&rep, &k, 1, ReiterFlavor::Positive).unwrap();
        assert_eq!(cert.status, SolveStatus::InfeasibleLowerBound);
        assert!(verify_rep_reiter(&rep, &k, &cert).is_ok());
        let (mean, _) = bekka_mean_solve(&rep).unwrap();
        let report = verify_bekka_mean(&rep, &mean.matrix).unwrap();
        assert!(report.ok);
    }
}
