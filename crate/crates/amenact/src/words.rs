//! Reduced words over the free group F_k.
//!
//! A letter is a nonzero integer: `+i` is the generator `a_i` (1-based),
//! `-i` its inverse. Words are kept reduced (no adjacent cancelling pair);
//! the empty word is the identity. Free-group elements are never
//! enumerated — they are carried as reduced words and mapped into the
//! finite inverse semigroup of partial bijections downstream.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeGroupContext {
    pub rank: usize,
}

impl FreeGroupContext {
    pub fn new(rank: usize) -> Self {
        FreeGroupContext { rank }
    }

    /// The 2k letters `a_1, .., a_k, a_1⁻¹, .., a_k⁻¹`.
    pub fn letters(&self) -> Vec<i32> {
        let mut out = Vec::with_capacity(2 * self.rank);
        for i in 1..=self.rank as i32 {
            out.push(i);
        }
        for i in 1..=self.rank as i32 {
            out.push(-i);
        }
        out
    }

    pub fn check_word(&self, w: &[i32]) -> Result<()> {
        for &l in w {
            if l == 0 || l.unsigned_abs() as usize > self.rank {
                return Err(Error::UnknownSymbol(format!("letter {l}")));
            }
        }
        Ok(())
    }

    /// All reduced words of length <= radius, in BFS order (identity first).
    pub fn ball(&self, radius: usize) -> Vec<Vec<i32>> {
        let mut out: Vec<Vec<i32>> = vec![vec![]];
        let mut frontier: Vec<Vec<i32>> = vec![vec![]];
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &frontier {
                for l in self.letters() {
                    if w.last().map_or(false, |&last| last == -l) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(word: &[i32]) -> Vec<i32> {
    let mut stack: Vec<i32> = Vec::with_capacity(word.len());
    for &l in word {
        if stack.last().map_or(false, |&top| top == -l) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack
}

pub fn concat_reduce(a: &[i32], b: &[i32]) -> Vec<i32> {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    free_reduce(&w)
}

pub fn invert(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|&l| -l).collect()
}

/// Parses `"a b⁻¹ c"` style words; also accepts `a^-1`, `a-1` and `A` for inverses.
pub fn parse_word(ctx: &FreeGroupContext, s: &str) -> Result<Vec<i32>> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        let (base, inv) = if let Some(b) = tok.strip_suffix("⁻¹") {
            (b, true)
        } else if let Some(b) = tok.strip_suffix("^-1") {
            (b, true)
        } else if let Some(b) = tok.strip_suffix("-1") {
            (b, true)
        } else {
            (tok, false)
        };
        let mut chars = base.chars();
        let c = chars.next().ok_or_else(|| Error::UnknownSymbol(tok.into()))?;
        if chars.next().is_some() {
            return Err(Error::UnknownSymbol(tok.into()));
        }
        let (idx, upper_inv) = if c.is_ascii_lowercase() {
            (c as i32 - 'a' as i32 + 1, false)
        } else if c.is_ascii_uppercase() {
            (c as i32 - 'A' as i32 + 1, true)
        } else {
            return Err(Error::UnknownSymbol(tok.into()));
        };
        if idx as usize > ctx.rank {
            return Err(Error::UnknownSymbol(tok.into()));
        }
        let letter = if inv ^ upper_inv { -idx } else { idx };
        out.push(letter);
    }
    Ok(free_reduce(&out))
}

pub fn word_to_string(w: &[i32]) -> String {
    if w.is_empty() {
        return "e".into();
    }
    w.iter()
        .map(|&l| {
            let c = (b'a' + (l.unsigned_abs() as u8 - 1)) as char;
            if l > 0 {
                c.to_string()
            } else {
                format!("{c}⁻¹")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        let ctx = FreeGroupContext::new(2);
        assert_eq!(parse_word(&ctx, "a a⁻¹ b").unwrap(), vec![2]);
        assert_eq!(parse_word(&ctx, "").unwrap(), Vec::<i32>::new());
        assert_eq!(parse_word(&ctx, "a b b⁻¹ a").unwrap(), vec![1, 1]);
    }

    #[test]
    fn unknown_symbol_rejected() {
        let ctx = FreeGroupContext::new(1);
        assert!(parse_word(&ctx, "b").is_err());
        assert!(parse_word(&ctx, "?").is_err());
    }

    #[test]
    fn ball_sizes_rank2() {
        let ctx = FreeGroupContext::new(2);
        assert_eq!(ctx.ball(0).len(), 1);
        assert_eq!(ctx.ball(1).len(), 5);
        assert_eq!(ctx.ball(2).len(), 17);
    }

    #[test]
    fn reduce_cancels_w_winv() {
        let ctx = FreeGroupContext::new(3);
        let mut rng = crate::rng::SplitMix64::new(11);
        for _ in 0..200 {
            let len = rng.usize_below(13);
            let w: Vec<i32> = (0..len)
                .map(|_| {
                    let ls = ctx.letters();
                    ls[rng.usize_below(ls.len())]
                })
                .collect();
            let r = free_reduce(&w);
            assert!(concat_reduce(&r, &invert(&r)).is_empty());
        }
    }
}
