//! A free group acting partially on its own Cayley ball: evaluation along
//! reduced words, the finite closure, and the invariant-measure battery.

use amenact::free_action::free_ball_action;
use amenact::measure::{invariant_measure_solve, reiter_solve, MoveSet};
use amenact::ratio::rat_to_string;
use amenact::words::{parse_word, word_to_string};

fn main() {
    let fa = free_ball_action(2, 2);
    println!("F₂ on its radius-2 ball: {} points", fa.set_size);

    let closure = fa.closure();
    println!("closure of the generated inverse semigroup: {} distinct partial bijections", closure.elements.len());
    for (w, p) in closure.elements.iter().take(6) {
        println!("  α_{} has domain size {}", word_to_string(w), p.domain().len());
    }

    let w = parse_word(&fa.ctx, "a b a⁻¹").unwrap();
    let alpha_w = fa.eval(&w).unwrap();
    println!("α_{} domain: {:?}", word_to_string(&w), alpha_w.domain());

    // battery over the word ball of radius 2
    let full = MoveSet::from_free_closure(&fa);
    let k = MoveSet::from_free_ball(&fa, 2);
    let im = invariant_measure_solve(&full);
    println!("invariant measure polytope dimension: {}", im.polytope_dim);
    let p1 = reiter_solve(&k, 1).unwrap();
    println!(
        "Reiter (P₁) defect over the radius-2 word ball: {}",
        p1.defect_exact.as_ref().map(rat_to_string).unwrap_or_default()
    );
}
