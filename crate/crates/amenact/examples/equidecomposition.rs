//! Equi-decomposability by bipartite matching, the induced bijection, and
//! the bounded type semigroup.

use amenact::action::instance_e1;
use amenact::equidecomp::{
    equidecomposable, equidecomposition_bijection, is_paradoxical, nfold_check, type_equal,
    type_leq, TypeElement,
};
use amenact::measure::MoveSet;

fn main() {
    let e1 = instance_e1();
    let moves = MoveSet::from_action_full(&e1);

    match equidecomposable(&moves, &[0], &[1]).unwrap() {
        Some(dec) => {
            println!("{{0}} ∼ {{1}} via pieces:");
            for piece in &dec.pieces {
                println!("  move {} carries {:?} to {:?}", piece.label, piece.members, piece.images);
            }
            let phi = equidecomposition_bijection(&moves, &dec, 7).unwrap();
            println!("piecewise bijection φ = {phi:?}");
        }
        None => println!("{{0}} and {{1}} are not equi-decomposable"),
    }
    println!("{{0,1}} ∼ {{0}}? {}", equidecomposable(&moves, &[0, 1], &[0]).unwrap().is_some());

    let report = is_paradoxical(&moves);
    println!("paradoxical: {} — {}", report.paradoxical, report.argument);

    let a = TypeElement::from_subset(&[0]);
    let b = TypeElement::from_subset(&[1]);
    let full = TypeElement::from_subset(&[0, 1]);
    println!("[{{0}}] = [{{1}}]: {}", type_equal(&moves, &a, &b));
    let double = full.add(&full, 6).unwrap();
    println!("[X] ≤ 2[X]: {}, 2[X] ≤ [X]: {}", type_leq(&moves, &full, &double), type_leq(&moves, &double, &full));
    println!("(n+1)[X] ≰ n[X] for n ≤ 3: {}", nfold_check(&moves, 3, 4).unwrap());
}
