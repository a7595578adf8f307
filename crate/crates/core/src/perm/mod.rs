//! Permutations of `{0, …, n-1}` and permutation groups.
//!
//! Permutations act on the right: `p^(ab) = (p^a)^b`, so `a.then(&b)` applies
//! `a` first.

mod conjugacy;
mod group;

pub use conjugacy::{conjugating_element, conjugating_element_with_budget, DEFAULT_CONJUGACY_BUDGET};
pub use group::PermGroup;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported degree; points are stored as `u16`.
pub const MAX_DEGREE: usize = u16::MAX as usize;

/// A bijection of `{0, …, degree-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} too large");
        Permutation { images: (0..degree as u16).collect() }
    }

    /// Builds a permutation from an image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::MalformedInput(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        let mut seen = vec![false; n];
        for &p in &images {
            if p >= n || seen[p] {
                return Err(Error::MalformedInput(format!("image array {images:?} is not a bijection")));
            }
            seen[p] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|p| p as u16).collect() })
    }

    /// Builds a permutation from disjoint cycles over 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree || touched[p] {
                    return Err(Error::MalformedInput(format!("bad cycle {cycle:?} for degree {degree}")));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of point `p`.
    #[inline]
    pub fn apply(&self, p: usize) -> usize {
        self.images[p] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&p| p as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&p| other.images[p as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    /// `x^-1 · self · x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        let mut out = vec![0u16; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            out[x.images[i] as usize] = x.images[p as usize];
        }
        Permutation { images: out }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &p)| i == p as usize).count()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i != p as usize)
    }

    /// Cycle lengths, sorted ascending, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Cycle notation with 0-based points, e.g. `(0 1 2)(3 4)`; the identity is `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles.iter().map(|c| format!("({})", c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "))).collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

#[derive(Serialize, Deserialize)]
struct PermutationJson {
    deg: usize,
    img: Vec<usize>,
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermutationJson { deg: self.degree(), img: self.images().collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PermutationJson::deserialize(d)?;
        if raw.deg != raw.img.len() {
            return Err(serde::de::Error::custom("deg does not match img length"));
        }
        Permutation::from_images(raw.img).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn cycle_string_and_order() {
        let p = Permutation::from_cycles(6, &[vec![0, 1, 2], vec![3, 4]]).unwrap();
        assert_eq!(p.to_cycle_string(), "(0 1 2)(3 4)");
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_type(), vec![1, 2, 3]);
        assert!(p.pow(6).is_identity());
    }

    #[test]
    fn json_shape() {
        let p = Permutation::from_images(vec![1, 2, 0, 4, 5, 3]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"deg":6,"img":[1,2,0,4,5,3]}"#);
        let back: Permutation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Permutation>(r#"{"deg":2,"img":[0,0]}"#).is_err());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn conjugation_matches_products(a in arb_perm(9), x in arb_perm(9)) {
            let direct = x.inverse().then(&a).then(&x);
            prop_assert_eq!(a.conjugate_by(&x), direct);
            prop_assert!(a.then(&a.inverse()).is_identity());
        }
    }
}
