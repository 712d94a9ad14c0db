//! Property tests for the structural invariants that hold across the whole
//! instance space, not just the curated examples.

use std::sync::Arc;

use amenact::action::{orbits, restrict_global, rn_cocycle, verify_partial_action, PartialAction};
use amenact::group::FiniteGroup;
use amenact::ratio::rat;
use amenact::schema::{dump_action, load_action, ActionInput};
use amenact::words::{concat_reduce, free_reduce, invert, FreeGroupContext};
use proptest::prelude::*;

fn letter_strategy(rank: usize) -> impl Strategy<Value = i32> {
    let r = rank as i32;
    (1..=r).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)])
}

fn word_strategy(rank: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(letter_strategy(rank), 0..12)
}

proptest! {
    #[test]
    fn reduce_is_idempotent_and_cancels_inverse(w in word_strategy(3)) {
        let r = free_reduce(&w);
        prop_assert_eq!(free_reduce(&r).clone(), r.clone());
        prop_assert!(concat_reduce(&r, &invert(&r)).is_empty());
    }

    #[test]
    fn concat_then_reduce_is_associative(
        a in word_strategy(2),
        b in word_strategy(2),
        c in word_strategy(2),
    ) {
        let ctx = FreeGroupContext::new(2);
        prop_assert!(ctx.check_word(&a).is_ok());
        let left = concat_reduce(&concat_reduce(&a, &b), &c);
        let right = concat_reduce(&a, &concat_reduce(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn restriction_of_rotation_always_verifies(
        n in 2usize..10,
        mask in 1u32..512,
    ) {
        let zn = Arc::new(FiniteGroup::cyclic(n));
        let rot = PartialAction::global(
            zn,
            (0..n).map(|t| (0..n).map(|x| (x + t) % n).collect()).collect(),
        ).unwrap();
        let subset: Vec<usize> = (0..n).filter(|&x| mask >> (x % 9) & 1 == 1).collect();
        prop_assume!(!subset.is_empty());
        let (restricted, _) = restrict_global(&rot, &subset).unwrap();
        prop_assert!(verify_partial_action(&restricted).is_valid());
    }

    #[test]
    fn orbits_invariant_under_relabeling(seed in 0u64..500) {
        let a = amenact::generators::random_partial(2 + (seed % 7) as usize, seed).unwrap();
        let m = a.set_size;
        // conjugate by the reversal permutation
        let perm: Vec<usize> = (0..m).rev().collect();
        let alpha = a
            .group
            .elements()
            .map(|t| {
                let mut mapping = vec![None; m];
                for x in 0..m {
                    if let Some(y) = a.apply(t, x) {
                        mapping[perm[x]] = Some(perm[y]);
                    }
                }
                amenact::pbij::PartialBijection::new(mapping).unwrap()
            })
            .collect();
        let relabeled = PartialAction::new(a.group.clone(), alpha, None).unwrap();
        prop_assert!(verify_partial_action(&relabeled).is_valid());
        let orig: Vec<usize> = orbits(&a).orbits.iter().map(|o| o.len()).collect();
        let mut moved: Vec<usize> = orbits(&relabeled).orbits.iter().map(|o| o.len()).collect();
        moved.sort_unstable();
        let mut orig_sorted = orig.clone();
        orig_sorted.sort_unstable();
        prop_assert_eq!(orig_sorted, moved);
    }

    #[test]
    fn rn_cocycle_identity_exact_under_random_weights(seed in 0u64..200, w0 in 1i64..6, w1 in 1i64..6) {
        let a = amenact::generators::random_partial(2 + (seed % 5) as usize, seed).unwrap();
        let weights: Vec<_> = (0..a.set_size)
            .map(|x| if x % 2 == 0 { rat(w0, 1) } else { rat(w1, 2) })
            .collect();
        let weighted = a.with_weights(weights).unwrap();
        let sigma = rn_cocycle(&weighted);
        prop_assert!(sigma.verify(&weighted).is_ok());
    }

    #[test]
    fn schema_round_trip_identity(seed in 0u64..300) {
        let a = amenact::generators::random_partial(2 + (seed % 6) as usize, seed).unwrap();
        let schema = dump_action(&a);
        let text = serde_json::to_string(&schema).unwrap();
        let back: amenact::schema::ActionSchema = serde_json::from_str(&text).unwrap();
        match load_action(&back).unwrap() {
            ActionInput::Finite(b) => {
                prop_assert_eq!(a.alpha, b.alpha);
                prop_assert_eq!(a.weights, b.weights);
            }
            _ => prop_assert!(false, "expected a finite action"),
        }
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
