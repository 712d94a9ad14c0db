//! Induced partial representations from a subgroup: the weak (Ind) and
//! strong (ind) flavors on the E6 instance, the section constructions, and
//! the restriction-induction unitary.

use amenact::induct::{
    induce, instance_e6, resind_check, total_set_check, InduceFlavor, InducedSpace,
};
use amenact::prep::PartialRep;

fn main() {
    let (z4, sub, pi) = instance_e6();
    println!("G = ℤ/4, H = {:?}, π₂ = diag(1,0)", sub.elements);

    let weak = induce(z4.clone(), &sub, &pi, InduceFlavor::Ind).unwrap();
    let strong = induce(z4.clone(), &sub, &pi, InduceFlavor::IndStrong).unwrap();
    println!("dim Ė = {}, dim Ė⁰ = {}", weak.space.dim_weak(), strong.space.dim_strong());
    println!("(ind π)_1 (the quasi-regular swap):");
    for i in 0..2 {
        println!(
            "  [{:+.0} {:+.0}]",
            strong.rep.pi[1][(i, 0)].re,
            strong.rep.pi[1][(i, 1)].re
        );
    }

    let space = InducedSpace::new(z4.clone(), sub.clone(), pi.clone()).unwrap();
    let total = total_set_check(&space);
    println!(
        "ξ_(f,v) span: rank {} of dim Ė⁰ = {} → total: {}",
        total.spanned_rank, total.dim_strong, total.pass
    );

    // ind(Res σ ⊗ π) ≅ σ ⊗ ind π for a character σ
    let chi = PartialRep::character_zn(z4.clone(), 1);
    let report = resind_check(&chi, z4, &sub, &pi).unwrap();
    println!(
        "resind unitary on {} probes: isometry residual {:.2e}, intertwining residual {:.2e}",
        report.probes, report.isometry_residual, report.intertwine_residual
    );
}
