//! Partial actions of a free group, generated on demand.
//!
//! Any k injective partial bijections generate a partial action of F_k by
//! maximal-domain composition along reduced words. The image inside the
//! inverse semigroup of partial bijections is finite even though F_k is
//! not, so the closure set is reported explicitly. Predicates that
//! quantify over all of G are rejected upstream for free contexts.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::pbij::PartialBijection;
use crate::ratio::{rat_one, Rat};
use crate::unionfind::UnionFind;
use crate::words::{free_reduce, FreeGroupContext};

#[derive(Debug, Clone)]
pub struct FreeAction {
    pub ctx: FreeGroupContext,
    pub set_size: usize,
    /// generator bijections α_{a_1}, .., α_{a_k}
    pub gens: Vec<PartialBijection>,
    pub weights: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub struct FreeClosure {
    /// Distinct partial bijections α_w over all reduced words, each with the
    /// shortest (then lexicographically first) word realizing it.
    pub elements: Vec<(Vec<i32>, PartialBijection)>,
}

impl FreeAction {
    pub fn new(ctx: FreeGroupContext, gens: Vec<PartialBijection>, weights: Option<Vec<Rat>>) -> Result<Self> {
        if gens.len() != ctx.rank {
            return Err(Error::SizeMismatch(format!(
                "need {} generators, got {}",
                ctx.rank,
                gens.len()
            )));
        }
        let m = gens.first().map_or(0, |p| p.size());
        if gens.iter().any(|p| p.size() != m) {
            return Err(Error::SizeMismatch("generator carriers differ".into()));
        }
        if gens.iter().any(|p| !p.is_injective()) {
            return Err(Error::Invalid("generators must be injective".into()));
        }
        let weights = weights.unwrap_or_else(|| vec![rat_one(); m]);
        if weights.len() != m || !crate::ratio::all_positive(&weights) {
            return Err(Error::Invalid("weights must be strictly positive, one per point".into()));
        }
        Ok(FreeAction { ctx, set_size: m, gens, weights })
    }

    fn letter_map(&self, letter: i32) -> PartialBijection {
        let idx = (letter.unsigned_abs() - 1) as usize;
        if letter > 0 {
            self.gens[idx].clone()
        } else {
            self.gens[idx].inverse()
        }
    }

    /// α_w = composition of generator maps along the reduced word
    /// (rightmost letter acts first).
    pub fn eval(&self, word: &[i32]) -> Result<PartialBijection> {
        self.ctx.check_word(word)?;
        let w = free_reduce(word);
        let mut acc = PartialBijection::identity(self.set_size);
        for &letter in w.iter().rev() {
            acc = self.letter_map(letter).compose(&acc);
        }
        Ok(acc)
    }

    /// BFS over (bijection value, last letter) states; the word tree is
    /// infinite but the state set is not.
    pub fn closure(&self) -> FreeClosure {
        let mut seen: BTreeMap<(PartialBijection, i32), ()> = BTreeMap::new();
        let mut values: BTreeMap<PartialBijection, Vec<i32>> = BTreeMap::new();
        let id = PartialBijection::identity(self.set_size);
        values.insert(id.clone(), vec![]);
        let mut frontier: Vec<(PartialBijection, Vec<i32>)> = vec![(id, vec![])];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (val, word) in frontier {
                for letter in self.ctx.letters() {
                    if word.last().map_or(false, |&last| last == -letter) {
                        continue;
                    }
                    // appending: α_{w·x} = α_w ∘ α_x
                    let new_val = val.compose(&self.letter_map(letter));
                    let key = (new_val.clone(), letter);
                    if seen.contains_key(&key) {
                        continue;
                    }
                    seen.insert(key, ());
                    let mut w = word.clone();
                    w.push(letter);
                    values.entry(new_val.clone()).or_insert_with(|| w.clone());
                    next.push((new_val, w));
                }
            }
            frontier = next;
        }
        let mut elements: Vec<(Vec<i32>, PartialBijection)> =
            values.into_iter().map(|(v, w)| (w, v)).collect();
        elements.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        FreeClosure { elements }
    }

    /// Germ edges from generator maps (connectivity under all α_w reduces to
    /// generator steps, each composition being a path of generator germs).
    pub fn germ_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for g in &self.gens {
            for x in g.domain() {
                out.push((x, g.apply(x).unwrap()));
            }
        }
        out
    }

    pub fn orbit_partition(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.set_size);
        for (x, y) in self.germ_edges() {
            uf.union(x, y);
        }
        uf.classes()
    }

    pub fn counting_weights(&self) -> bool {
        self.weights.iter().all(|w| *w == rat_one())
    }
}

/// F_k acting on its own Cayley ball of the given radius by left translation.
pub fn free_ball_action(rank: usize, radius: usize) -> FreeAction {
    let ctx = FreeGroupContext::new(rank);
    let ball = ctx.ball(radius);
    let index: BTreeMap<Vec<i32>, usize> = ball.iter().cloned().zip(0..).collect();
    let gens = (1..=rank as i32)
        .map(|i| {
            let mapping = ball
                .iter()
                .map(|w| {
                    let translated = free_reduce(&[&[i][..], &w[..]].concat());
                    index.get(&translated).copied()
                })
                .collect();
            PartialBijection { mapping }
        })
        .collect();
    FreeAction::new(ctx, gens, None).expect("ball translations are injective")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_permutation_generates_cyclic_image() {
        let ctx = FreeGroupContext::new(1);
        let cycle = PartialBijection::new((0..4).map(|x| Some((x + 1) % 4)).collect()).unwrap();
        let fa = FreeAction::new(ctx, vec![cycle], None).unwrap();
        let closure = fa.closure();
        assert_eq!(closure.elements.len(), 4);
        assert!(closure.elements.iter().all(|(_, p)| p.is_total()));
    }

    #[test]
    fn empty_generators_collapse() {
        let ctx = FreeGroupContext::new(2);
        let fa = FreeAction::new(
            ctx,
            vec![PartialBijection::empty(3), PartialBijection::empty(3)],
            None,
        )
        .unwrap();
        for w in fa.ctx.ball(3) {
            if w.is_empty() {
                continue;
            }
            assert_eq!(fa.eval(&w).unwrap(), PartialBijection::empty(3));
        }
        // closure: identity plus the empty map
        assert_eq!(fa.closure().elements.len(), 2);
    }

    #[test]
    fn free_ball_17_closure_matches_word_enumeration() {
        let fa = free_ball_action(2, 2);
        assert_eq!(fa.set_size, 17);
        // oracle: evaluate every reduced word of length ≤ 3 directly
        let mut distinct: std::collections::BTreeSet<PartialBijection> = Default::default();
        for w in fa.ctx.ball(3) {
            distinct.insert(fa.eval(&w).unwrap());
        }
        let closure = fa.closure();
        // closure covers at least everything seen in the radius-3 word ball
        for p in &distinct {
            assert!(closure.elements.iter().any(|(_, q)| q == p));
        }
        // domain sizes per word length ≤ 3: left translation by a reduced
        // word w of length l maps the ball-of-2 into itself exactly on
        // {v : |reduce(w·v)| ≤ 2}, computed here by the same oracle
        for w in fa.ctx.ball(3) {
            let p = fa.eval(&w).unwrap();
            let expected = fa
                .ctx
                .ball(2)
                .iter()
                .filter(|v| crate::words::concat_reduce(&w, v).len() <= 2)
                .count();
            assert_eq!(p.domain().len(), expected, "word {:?}", w);
        }
    }

    #[test]
    fn alpha_wv_extends_alpha_w_compose_alpha_v() {
        let fa = free_ball_action(2, 1);
        let ball = fa.ctx.ball(4);
        let words: Vec<_> = ball.iter().filter(|w| w.len() <= 4).collect();
        for w in &words {
            for v in &words {
                let wv = crate::words::concat_reduce(w, v);
                let lhs = fa.eval(&wv).unwrap();
                let rhs = fa.eval(w).unwrap().compose(&fa.eval(v).unwrap());
                assert!(rhs.extended_by(&lhs), "w={w:?} v={v:?}");
            }
        }
    }
}
