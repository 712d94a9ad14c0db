//! Instance generators and the single-entry mutation machinery used by the
//! axiom-soundness battery. Every generated instance is verified before it
//! is handed out; every mutation provably breaks an axiom.

use std::sync::Arc;

use crate::action::{restrict_global, verify_partial_action, PartialAction};
use crate::error::{Error, Result};
use crate::free_action::{free_ball_action, FreeAction};
use crate::group::FiniteGroup;
use crate::pbij::PartialBijection;
use crate::rng::SplitMix64;
use crate::schema::ActionInput;

#[derive(Debug, Clone)]
pub enum GenKind {
    /// ℤ/n rotation restricted to a contiguous arc
    RotationArc { n: usize, arc_start: usize, arc_len: usize },
    /// ℤ₂ gluing on m points, α_g = id above the cut
    IntervalGluing { m: usize, cut: usize },
    /// F_k on its Cayley ball by left translation
    FreeBall { rank: usize, radius: usize },
    /// seeded restriction of a random global action
    RandomPartial { m: usize, seed: u64 },
    /// full rotation action of ℤ/n
    Global { n: usize },
    /// disjoint union of a swapped pair and a fixed point: domains are
    /// orbit-saturated, so the orbit quotient is a true factor
    BlockPartial,
}

pub fn rotation_action(n: usize) -> PartialAction {
    let zn = Arc::new(FiniteGroup::cyclic(n));
    PartialAction::global(zn, (0..n).map(|t| (0..n).map(|x| (x + t) % n).collect()).collect())
        .expect("rotation is a global action")
}

pub fn generate(kind: &GenKind) -> Result<ActionInput> {
    let out = match kind {
        GenKind::RotationArc { n, arc_start, arc_len } => {
            if *arc_len == 0 || *arc_len > *n {
                return Err(Error::Invalid("arc length out of range".into()));
            }
            let rot = rotation_action(*n);
            let arc: Vec<usize> = (0..*arc_len).map(|i| (arc_start + i) % n).collect();
            ActionInput::Finite(restrict_global(&rot, &arc)?.0)
        }
        GenKind::IntervalGluing { m, cut } => {
            ActionInput::Finite(crate::action::instance_interval_gluing(*m, *cut)?)
        }
        GenKind::FreeBall { rank, radius } => {
            if *rank == 0 || *rank > 4 || *radius > 3 {
                return Err(Error::Invalid("free ball parameters out of range".into()));
            }
            ActionInput::Free(free_ball_action(*rank, *radius))
        }
        GenKind::RandomPartial { m, seed } => ActionInput::Finite(random_partial(*m, *seed)?),
        GenKind::Global { n } => ActionInput::Finite(rotation_action(*n)),
        GenKind::BlockPartial => {
            let z2 = Arc::new(FiniteGroup::cyclic(2));
            let alpha = vec![
                PartialBijection::identity(3),
                PartialBijection::new(vec![Some(1), Some(0), None])?,
            ];
            ActionInput::Finite(PartialAction::new(z2, alpha, None)?)
        }
    };
    if let ActionInput::Finite(a) = &out {
        let report = verify_partial_action(a);
        if !report.is_valid() {
            return Err(Error::Invalid(format!(
                "generator produced an invalid action: {}",
                report.violations[0].axiom
            )));
        }
    }
    Ok(out)
}

/// Seeded restriction of a random global ℤ/n action on m points (random
/// disjoint cycles with lengths dividing n give the generator permutation).
pub fn random_partial(m: usize, seed: u64) -> Result<PartialAction> {
    if m == 0 || m > 24 {
        return Err(Error::Invalid("carrier size out of range".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let n = [2usize, 3, 4, 6][rng.usize_below(4)];
    // permutation of order dividing n: shuffle points, chop into cycles with
    // lengths from the divisors of n
    let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    let mut points: Vec<usize> = (0..m).collect();
    rng.shuffle(&mut points);
    let mut perm: Vec<usize> = (0..m).collect();
    let mut rest = points.as_slice();
    while !rest.is_empty() {
        // only cycle lengths dividing n keep the permutation of order | n
        let feasible: Vec<usize> =
            divisors.iter().copied().filter(|&d| d <= rest.len()).collect();
        let len = feasible[rng.usize_below(feasible.len())];
        let cycle = &rest[..len];
        for i in 0..len {
            perm[cycle[i]] = cycle[(i + 1) % len];
        }
        rest = &rest[len..];
    }
    let zn = Arc::new(FiniteGroup::cyclic(n));
    let mut maps = Vec::with_capacity(n);
    let mut cur: Vec<usize> = (0..m).collect();
    for _ in 0..n {
        maps.push(cur.clone());
        cur = cur.iter().map(|&x| perm[x]).collect();
    }
    let global = PartialAction::global(zn, maps)?;
    // nonempty random subset
    let mut subset: Vec<usize> = (0..m).filter(|_| rng.bool()).collect();
    if subset.is_empty() {
        subset.push(rng.usize_below(m));
    }
    Ok(restrict_global(&global, &subset)?.0)
}

/// A single-entry mutation guaranteed to break a partial-action axiom:
/// rewriting the image of one defined entry of α_t (t ≠ e, carrier ≥ 2)
/// always violates (3-1) or injectivity; degenerate cases fall back to
/// damaging α_e, which breaks X_e = X.
pub fn mutate_action(action: &PartialAction, seed: u64) -> (PartialAction, String) {
    let mut rng = SplitMix64::new(seed);
    let mut mutated = action.clone();
    let e = action.group.identity;
    let candidates: Vec<(usize, usize, usize)> = action
        .group
        .elements()
        .filter(|&t| t != e)
        .flat_map(|t| {
            action.alpha[t]
                .domain()
                .into_iter()
                .map(move |x| (t, x, action.alpha[t].apply(x).unwrap()))
        })
        .collect();
    if !candidates.is_empty() && action.set_size >= 2 {
        let (t, x, y) = candidates[rng.usize_below(candidates.len())];
        let new_y = (y + 1 + rng.usize_below(action.set_size - 1)) % action.set_size;
        mutated.alpha[t].mapping[x] = Some(new_y);
        (mutated, format!("α_{t}({x}): {y} ↦ {new_y}"))
    } else {
        // fall back: damage the identity map
        let x = rng.usize_below(action.set_size.max(1));
        mutated.alpha[e].mapping[x] = None;
        (mutated, format!("α_e({x}) removed"))
    }
}

/// The curated + seeded instance list the suite runs on.
pub fn suite_instances(seed: u64, extra_random: usize) -> Vec<(String, ActionInput)> {
    let mut out: Vec<(String, ActionInput)> = Vec::new();
    let curated: Vec<(String, GenKind)> = vec![
        ("E1-rotation-arc-4-2".into(), GenKind::RotationArc { n: 4, arc_start: 0, arc_len: 2 }),
        ("rotation-arc-4-3".into(), GenKind::RotationArc { n: 4, arc_start: 0, arc_len: 3 }),
        ("rotation-arc-12-5".into(), GenKind::RotationArc { n: 12, arc_start: 0, arc_len: 5 }),
        ("E3-interval-gluing-3-1".into(), GenKind::IntervalGluing { m: 3, cut: 1 }),
        ("interval-gluing-5-2".into(), GenKind::IntervalGluing { m: 5, cut: 2 }),
        ("global-rotation-4".into(), GenKind::Global { n: 4 }),
        ("global-rotation-6".into(), GenKind::Global { n: 6 }),
        ("block-partial".into(), GenKind::BlockPartial),
        ("free-ball-2-2".into(), GenKind::FreeBall { rank: 2, radius: 2 }),
    ];
    for (id, kind) in curated {
        out.push((id, generate(&kind).expect("curated instances are valid")));
    }
    let mut rng = SplitMix64::new(seed);
    for i in 0..extra_random {
        let m = 2 + rng.usize_below(6); // battery instances stay small; larger carriers are exercised by the axiom battery
        let s = rng.next_u64();
        let kind = GenKind::RandomPartial { m, seed: s };
        out.push((format!("random-partial-{i}-m{m}"), generate(&kind).expect("valid")));
    }
    out
}

/// Free-action accessor for the suite.
pub fn as_free(input: &ActionInput) -> Option<&FreeAction> {
    match input {
        ActionInput::Free(f) => Some(f),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_arc_4_2_is_e1() {
        let out = generate(&GenKind::RotationArc { n: 4, arc_start: 0, arc_len: 2 }).unwrap();
        let ActionInput::Finite(a) = out else { panic!() };
        let e1 = crate::action::instance_e1();
        assert_eq!(a.alpha, e1.alpha);
    }

    #[test]
    fn interval_gluing_3_1_is_e3() {
        let out = generate(&GenKind::IntervalGluing { m: 3, cut: 1 }).unwrap();
        let ActionInput::Finite(a) = out else { panic!() };
        assert_eq!(a.x_set(1), vec![2]);
    }

    #[test]
    fn random_partials_always_verify() {
        for seed in 0..200u64 {
            let a = random_partial(2 + (seed % 9) as usize, seed).unwrap();
            assert!(verify_partial_action(&a).is_valid(), "seed {seed}");
        }
    }

    #[test]
    fn mutations_always_violate() {
        for seed in 0..100u64 {
            let a = random_partial(2 + (seed % 9) as usize, seed).unwrap();
            let (mutated, what) = mutate_action(&a, seed.wrapping_mul(7).wrapping_add(1));
            let report = verify_partial_action(&mutated);
            assert!(!report.is_valid(), "seed {seed}: mutation {what} went undetected");
        }
        // degenerate fallback: trivial action forces the α_e route
        let trivial = PartialAction::trivial(Arc::new(FiniteGroup::cyclic(3)), 2);
        let (mutated, _) = mutate_action(&trivial, 3);
        assert!(!verify_partial_action(&mutated).is_valid());
    }

    #[test]
    fn suite_instances_all_valid() {
        let list = suite_instances(0, 5);
        assert!(list.len() >= 10);
        for (id, input) in &list {
            if let ActionInput::Finite(a) = input {
                assert!(verify_partial_action(a).is_valid(), "{id}");
            }
        }
    }
}
