//! Enveloping action of the ℤ₂ interval-gluing instance: five classes with
//! one glued pair, plus the universal factorization of a restriction.

use amenact::action::{instance_e1, instance_interval_gluing};
use amenact::envelope::{factor_space, globalize, restriction_envelope_iso};
use amenact::generators::rotation_action;

fn main() {
    let e3 = instance_interval_gluing(3, 1).unwrap();
    let env = globalize(&e3).unwrap();
    println!("E3 envelope: {} classes", env.class_count());
    for (c, members) in env.classes.iter().enumerate() {
        println!("  class {c}: members {members:?}");
    }
    println!("β_g row: {:?} (swaps the two copies, fixes the glued class)", env.beta[1]);

    // a restriction's envelope is the orbit sub-action of the ambient global
    let e1 = instance_e1();
    let env1 = globalize(&e1).unwrap();
    let ambient = rotation_action(4);
    let iso = restriction_envelope_iso(&env1, &ambient, &[0, 1]).unwrap();
    println!("E1 envelope ≅ rotation orbit {:?} via [x,t] ↦ β_t(x): {:?}", iso.orbit_labels, iso.iso);

    // the orbit factor of E1 is *not* a valid partial action: the (3-2)
    // violation is reported, not hidden
    let factor = factor_space(&e1).unwrap();
    println!(
        "E1 factor: {} class(es), α̃ valid: {}",
        factor.classes.len(),
        factor.validity.is_valid()
    );
    for v in &factor.validity.violations {
        println!("  violated: {} witness {:?}", v.axiom, v.witness);
    }
}
