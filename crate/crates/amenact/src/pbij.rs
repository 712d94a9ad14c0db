//! Partial bijections of a finite index set `{0, .., m-1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartialBijection {
    /// mapping[x] = Some(image) where defined.
    pub mapping: Vec<Option<usize>>,
}

impl PartialBijection {
    pub fn new(mapping: Vec<Option<usize>>) -> Result<Self> {
        let m = mapping.len();
        let mut seen = vec![false; m];
        for &img in mapping.iter().flatten() {
            if img >= m {
                return Err(Error::Invalid(format!("image {img} out of range {m}")));
            }
            if seen[img] {
                return Err(Error::Invalid(format!("image {img} repeated: not injective")));
            }
            seen[img] = true;
        }
        Ok(PartialBijection { mapping })
    }

    pub fn identity(m: usize) -> Self {
        PartialBijection { mapping: (0..m).map(Some).collect() }
    }

    pub fn empty(m: usize) -> Self {
        PartialBijection { mapping: vec![None; m] }
    }

    pub fn size(&self) -> usize {
        self.mapping.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> Option<usize> {
        self.mapping[x]
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.mapping[x].is_some()).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.mapping.iter().flatten().copied().collect();
        img.sort_unstable();
        img
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.size()];
        for &img in self.mapping.iter().flatten() {
            if seen[img] {
                return false;
            }
            seen[img] = true;
        }
        true
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![None; self.size()];
        for (x, &img) in self.mapping.iter().enumerate() {
            if let Some(y) = img {
                inv[y] = Some(x);
            }
        }
        PartialBijection { mapping: inv }
    }

    /// `self ∘ other` with maximal domain: x ↦ self(other(x)).
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.size(), other.size());
        let mapping = (0..self.size())
            .map(|x| other.apply(x).and_then(|y| self.apply(y)))
            .collect();
        PartialBijection { mapping }
    }

    /// Restriction of the graph to x ∈ dom with x ∈ keep_dom and image in keep_img.
    pub fn restrict(&self, keep_dom: &[bool], keep_img: &[bool]) -> Self {
        let mapping = self
            .mapping
            .iter()
            .enumerate()
            .map(|(x, &img)| match img {
                Some(y) if keep_dom[x] && keep_img[y] => Some(y),
                _ => None,
            })
            .collect();
        PartialBijection { mapping }
    }

    /// Graph containment: every defined pair of `self` is a pair of `other`.
    pub fn extended_by(&self, other: &Self) -> bool {
        self.mapping
            .iter()
            .enumerate()
            .all(|(x, &img)| img.map_or(true, |y| other.apply(x) == Some(y)))
    }

    pub fn is_total(&self) -> bool {
        self.mapping.iter().all(|m| m.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pb(m: usize, pairs: &[(usize, usize)]) -> PartialBijection {
        let mut v = vec![None; m];
        for &(x, y) in pairs {
            v[x] = Some(y);
        }
        PartialBijection::new(v).unwrap()
    }

    #[test]
    fn compose_maximal_domain() {
        let f = pb(4, &[(0, 1), (2, 3)]);
        let g = pb(4, &[(1, 2), (3, 0)]);
        let gf = g.compose(&f); // x ↦ g(f(x))
        assert_eq!(gf.apply(0), Some(2));
        assert_eq!(gf.apply(2), Some(0));
        assert_eq!(gf.apply(1), None);
    }

    #[test]
    fn inverse_round_trip() {
        let f = pb(5, &[(0, 3), (1, 4), (2, 2)]);
        let finv = f.inverse();
        let idm = f.compose(&finv); // f ∘ f⁻¹ = id on image
        for &y in &f.image() {
            assert_eq!(idm.apply(y), Some(y));
        }
        assert!(PartialBijection::new(vec![Some(1), Some(1)]).is_err());
    }
}
