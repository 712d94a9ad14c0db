//! Koopman partial representation of E1, the multiplication covariance,
//! Bekka mean densities, and the Bekka ⇒ (P₁) gap at the zero operator.

use amenact::action::instance_e1;
use amenact::prep::{
    bekka_mean_solve, koopman_build, koopman_covariance_residual, rep_reiter_solve,
    verify_bekka_mean, verify_partial_rep, ReiterFlavor, SolveStatus,
};

fn main() {
    let e1 = instance_e1();
    let rep = koopman_build(&e1).unwrap();
    for t in 0..4 {
        let m = &rep.pi[t];
        let entries: Vec<String> = (0..2)
            .map(|i| (0..2).map(|j| format!("{:+.0}", m[(i, j)].re)).collect::<Vec<_>>().join(" "))
            .collect();
        println!("κ_{t} = [{}; {}]", entries[0], entries[1]);
    }
    let report = verify_partial_rep(&rep);
    println!("partial-representation axioms: max residual {}", report.max_residual);
    println!("multiplication covariance residual: {}", koopman_covariance_residual(&e1, &rep));

    let (id_mean, avg_mean) = bekka_mean_solve(&rep).unwrap();
    println!(
        "M = I/2: trace {}, trace-norm {}, invariance residual {}",
        id_mean.trace,
        id_mean.trace_norm,
        id_mean.invariance_residuals.iter().copied().fold(0.0f64, f64::max)
    );
    let verified = verify_bekka_mean(&rep, &avg_mean.matrix).unwrap();
    println!("averaged mean verified: {}", verified.ok);

    // the audited gap: a Bekka mean exists while (P₁) is obstructed by κ₂ = 0
    let cert = rep_reiter_solve(&rep, &[1, 2, 3], 1, ReiterFlavor::Positive).unwrap();
    match cert.status {
        SolveStatus::InfeasibleLowerBound => println!(
            "(P₁) on K = {{1,2,3}}: defect ≥ 1 for every T (κ_{} = 0) — \
             Bekka-amenable but not (P₁): the equivalence fails for partial representations",
            cert.obstruction.unwrap()
        ),
        other => println!("(P₁): {other:?} with defect {}", cert.achieved),
    }
}
