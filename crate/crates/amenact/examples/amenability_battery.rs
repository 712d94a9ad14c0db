//! The amenability-equivalence battery on E1: invariant measure, both Følner
//! modes (the literal one is exhaustively infeasible), exact Reiter
//! certificates, and the audit verdicts.

use amenact::action::instance_e1;
use amenact::measure::{
    audit_amenability_equivalences, folner_search, invariant_measure_solve, reiter_solve, FolnerMode,
    FolnerOutcome, MoveSet,
};
use amenact::ratio::{rat, rat_to_string};

fn main() {
    let e1 = instance_e1();
    let full = MoveSet::from_action_full(&e1);
    let k = MoveSet::from_action_k(&e1, &[1, 3]);

    let im = invariant_measure_solve(&full);
    println!(
        "invariant measure: μ = ({}), polytope dimension {}",
        im.mu.iter().map(rat_to_string).collect::<Vec<_>>().join(", "),
        im.polytope_dim
    );

    let p1 = reiter_solve(&k, 1).unwrap();
    println!(
        "Reiter (P₁) by exact LP: defect = {}",
        p1.defect_exact.as_ref().map(rat_to_string).unwrap_or_default()
    );

    let eps = rat(1, 2);
    match folner_search(&k, &eps, FolnerMode::Corrected).unwrap() {
        FolnerOutcome::Feasible(cert) => println!("corrected Følner: F = {:?} works", cert.subset),
        other => println!("corrected Følner: {other:?}"),
    }
    match folner_search(&k, &eps, FolnerMode::Literal).unwrap() {
        FolnerOutcome::Infeasible { subsets_checked } => println!(
            "literal Følner: INFEASIBLE, all {subsets_checked} nonempty subsets exhausted — \
             the displayed formula cannot be met on E1 while (P₁) holds with defect 0"
        ),
        other => println!("literal Følner: {other:?}"),
    }

    println!("\nfull audit verdicts:");
    for v in audit_amenability_equivalences("E1", &full, &k, &eps) {
        println!("  {:<40} {:?}", v.id, v.status);
    }
}
