//! Restriction of a global action to a subset, axiom verification, orbits,
//! and the Radon–Nikodym cocycle.

use amenact::action::{
    global_core_subgroup, is_partially_transitive, orbits, restrict_global, rn_cocycle,
    verify_partial_action, PartialAction,
};
use amenact::group::FiniteGroup;
use amenact::ratio::{rat, rat_to_string};
use std::sync::Arc;

fn main() {
    let z4 = Arc::new(FiniteGroup::cyclic(4));
    let rotation = PartialAction::global(
        z4,
        (0..4).map(|t| (0..4).map(|x| (x + t) % 4).collect()).collect(),
    )
    .unwrap();

    // E1: the rotation restricted to {0, 1}
    let (e1, labels) = restrict_global(&rotation, &[0, 1]).unwrap();
    println!("restricted to {labels:?}:");
    for t in 0..4 {
        println!("  X_{t} = {:?}, α_{t} domain = {:?}", e1.x_set(t), e1.dom(t));
    }
    let report = verify_partial_action(&e1);
    println!("axioms (3-1)–(3-3): {}", if report.is_valid() { "valid" } else { "INVALID" });

    let p = orbits(&e1);
    println!("orbits: {:?} (minimal: {})", p.orbits, p.is_minimal);

    let core = global_core_subgroup(&e1).unwrap();
    println!("global core subgroup: {:?}", core.elements);

    let (pt, witness) = is_partially_transitive(&e1);
    println!("partially transitive (literal definition): {pt}, witness {witness:?}");

    // weighted variant: ν = (1, 2) gives a nontrivial cocycle
    let weighted = e1.with_weights(vec![rat(1, 1), rat(2, 1)]).unwrap();
    let sigma = rn_cocycle(&weighted);
    println!("Radon–Nikodym cocycle with ν = (1,2):");
    for ((x, s), v) in &sigma.values {
        println!("  σ({x},{s}) = {}", rat_to_string(v));
    }
    sigma.verify(&weighted).unwrap();
    println!("2-cocycle identity verified exactly");
}
