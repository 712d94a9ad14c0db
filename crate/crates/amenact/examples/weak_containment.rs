//! Weak containment: PSD witnesses for coefficient approximation, trivial
//! containment defects, and both directions of the (P̃₂) equivalence.

use amenact::group::FiniteGroup;
use amenact::induct::{trivial_weakly_contained, wcrei_audit, weak_contains, ContainFlavor};
use amenact::prep::{instance_e5, tensor_with_conjugate, PartialRep};
use std::sync::Arc;

fn main() {
    let e5 = instance_e5();

    // self-containment: coefficients of E5 matched by PSD witnesses on E5
    let wits = weak_contains(&e5, &e5, &[1, 3], 1e-6, ContainFlavor::Plain, 42).unwrap();
    let worst = wits.iter().map(|w| w.max_error).fold(0.0f64, f64::max);
    println!("E5 ⪯ E5 on K = {{1,3}}: worst probe error {worst:.2e} over {} probes", wits.len());

    // trivial containment: π₂ = 0 forces ‖π₂ξ − ξ‖ = 1
    let t = trivial_weakly_contained(&e5, &[2]);
    println!("1 ⪯ E5 at K = {{2}}: min defect {:.3} (zero operator obstruction)", t.max_defect);
    let reg = PartialRep::regular(Arc::new(FiniteGroup::cyclic(2)));
    let t = trivial_weakly_contained(&reg, &[0, 1]);
    println!("1 ⪯ regular(ℤ/2): min defect {:.2e} via the constant vector", t.max_defect);

    // the weak-containment ⟺ (P̃₂) audit, both directions
    for k in [vec![1usize, 3], vec![1, 2, 3]] {
        let audit = wcrei_audit(&e5, &k, 1e-8).unwrap();
        println!(
            "K = {:?}: P̃₂ defect {:.3}, 1 ⪯ π⊗π̄ defect {:.3}, inequalities: {} / {}",
            k, audit.ptilde2_defect, audit.tensor_trivial_defect, audit.forward_ok, audit.backward_ok
        );
    }
    let tens = tensor_with_conjugate(&e5).unwrap();
    println!("π⊗π̄ dimension: {}", tens.dim);
}
