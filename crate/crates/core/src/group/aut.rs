use std::sync::Arc;

use super::{ElemSet, FiniteGroup};
use crate::error::{Error, Result};

/// Largest automorphism group that [`FiniteGroup::automorphisms`] will list.
pub const AUT_LIST_CAP: u128 = 200_000;

const UNSET: u8 = u8::MAX;

/// A homomorphism between table groups, stored as the image of each element index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupMap {
    images: Vec<u8>,
}

impl GroupMap {
    pub fn identity(order: usize) -> Self {
        GroupMap { images: (0..order as u8).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Self {
        GroupMap { images: images.into_iter().map(|x| x as u8).collect() }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn source_order(&self) -> usize {
        self.images.len()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GroupMap) -> GroupMap {
        GroupMap { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> GroupMap {
        let mut inv = vec![0u8; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u8;
        }
        GroupMap { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn map_set(&self, s: ElemSet) -> ElemSet {
        s.iter().map(|x| self.apply(x)).collect()
    }

    /// Checks the homomorphism law on every pair.
    pub fn is_homomorphism(&self, src: &FiniteGroup, dst: &FiniteGroup) -> bool {
        self.images.len() == src.order()
            && self.images.iter().all(|&y| (y as usize) < dst.order())
            && src
                .elements()
                .all(|a| src.elements().all(|b| self.apply(src.mul(a, b)) == dst.mul(self.apply(a), self.apply(b))))
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = ElemSet::EMPTY;
        for &y in &self.images {
            if seen.contains(y as usize) {
                return false;
            }
            seen = seen.with(y as usize);
        }
        true
    }
}

/// Generators of `Aut(G)` from a stabiliser chain over a generating sequence,
/// together with the group order (product of the orbit lengths).
#[derive(Debug)]
pub(crate) struct AutChain {
    pub gens: Vec<GroupMap>,
    pub order: u128,
}

/// Backtracking search for homomorphisms `src → dst` that are injective,
/// decided by the images of a generating sequence of `src`.
struct HomSearch<'a> {
    src: &'a FiniteGroup,
    dst: &'a FiniteGroup,
    seq: Vec<usize>,
    /// Candidate images for each generator: same element order.
    candidates: Vec<Vec<usize>>,
    phi: Vec<u8>,
    used: ElemSet,
    defined: Vec<usize>,
    imgs: Vec<usize>,
}

impl<'a> HomSearch<'a> {
    fn new(src: &'a FiniteGroup, dst: &'a FiniteGroup) -> Self {
        let seq = src.generating_sequence();
        let candidates = seq
            .iter()
            .map(|&g| {
                let o = src.element_order(g);
                dst.elements().filter(|&y| dst.element_order(y) == o).collect()
            })
            .collect();
        let mut phi = vec![UNSET; src.order()];
        phi[0] = 0;
        HomSearch { src, dst, seq, candidates, phi, used: ElemSet::singleton(0), defined: vec![0], imgs: Vec::new() }
    }

    /// Pushes generator image `t` for `seq[imgs.len()]` and extends the map over
    /// the generated subgroup. Returns the undo mark on success.
    fn push(&mut self, t: usize) -> Option<usize> {
        let mark = self.defined.len();
        self.imgs.push(t);
        let k = self.imgs.len();
        let mut pos = 0;
        while pos < self.defined.len() {
            let x = self.defined[pos];
            let fx = self.phi[x] as usize;
            for j in 0..k {
                let y = self.src.mul(x, self.seq[j]);
                let v = self.dst.mul(fx, self.imgs[j]);
                if self.phi[y] == UNSET {
                    if self.used.contains(v) {
                        self.pop(mark);
                        return None;
                    }
                    self.phi[y] = v as u8;
                    self.used = self.used.with(v);
                    self.defined.push(y);
                } else if self.phi[y] as usize != v {
                    self.pop(mark);
                    return None;
                }
            }
            pos += 1;
        }
        Some(mark)
    }

    fn pop(&mut self, mark: usize) {
        for &y in &self.defined[mark..] {
            self.used = self.used.without(self.phi[y] as usize);
            self.phi[y] = UNSET;
        }
        self.defined.truncate(mark);
        self.imgs.pop();
    }

    fn current(&self) -> GroupMap {
        GroupMap { images: self.phi.clone() }
    }

    /// Visits every completion of the current prefix; the visitor returns
    /// `false` to stop. Returns `false` if stopped.
    fn for_each(&mut self, visit: &mut dyn FnMut(GroupMap) -> bool) -> bool {
        let k = self.imgs.len();
        if k == self.seq.len() {
            return visit(self.current());
        }
        for i in 0..self.candidates[k].len() {
            let t = self.candidates[k][i];
            if let Some(mark) = self.push(t) {
                let go_on = self.for_each(visit);
                self.pop(mark);
                if !go_on {
                    return false;
                }
            }
        }
        true
    }

    fn first(&mut self) -> Option<GroupMap> {
        let mut found = None;
        self.for_each(&mut |m| {
            found = Some(m);
            false
        });
        found
    }
}

/// An isomorphism `g → h`, if one exists.
pub fn group_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupMap> {
    if g.order() != h.order() || g.order_histogram() != h.order_histogram() || g.is_abelian() != h.is_abelian() {
        return None;
    }
    HomSearch::new(g, h).first()
}

impl FiniteGroup {
    pub(crate) fn aut_chain(&self) -> Arc<AutChain> {
        self.aut_chain.get_or_init(|| Arc::new(self.build_aut_chain())).clone()
    }

    /// Level `i` fixes the images of the first `i` generators; its witnesses map
    /// `seq[i]` around its orbit. All witnesses together generate `Aut(G)`.
    fn build_aut_chain(&self) -> AutChain {
        let mut search = HomSearch::new(self, self);
        let seq = search.seq.clone();
        let mut gens: Vec<GroupMap> = Vec::new();
        let mut order: u128 = 1;
        for (level, &base) in seq.iter().enumerate() {
            let mut level_gens: Vec<GroupMap> = Vec::new();
            let mut orbit = ElemSet::singleton(base);
            for t in search.candidates[level].clone() {
                if orbit.contains(t) {
                    continue;
                }
                let Some(mark) = search.push(t) else { continue };
                let witness = search.first();
                search.pop(mark);
                if let Some(w) = witness {
                    level_gens.push(w);
                    orbit = orbit_under(orbit, &level_gens);
                }
            }
            order = order.saturating_mul(orbit.len() as u128);
            gens.extend(level_gens);
            search.push(base).expect("identity prefix extends");
        }
        AutChain { gens, order }
    }

    /// Generators of the automorphism group (empty when it is trivial).
    pub fn automorphism_generators(&self) -> Vec<GroupMap> {
        self.aut_chain().gens.clone()
    }

    /// `|Aut(G)|`, without listing the automorphisms.
    pub fn aut_order(&self) -> u128 {
        self.aut_chain().order
    }

    /// Every automorphism, in lexicographic order of image arrays.
    pub fn automorphisms(&self) -> Result<Arc<Vec<GroupMap>>> {
        let listed = self.aut_cache.get_or_init(|| {
            if self.aut_order() > AUT_LIST_CAP {
                return None;
            }
            let mut all = Vec::new();
            HomSearch::new(self, self).for_each(&mut |m| {
                all.push(m);
                true
            });
            all.sort();
            Some(Arc::new(all))
        });
        listed
            .clone()
            .ok_or_else(|| Error::cap(format!("automorphisms of {}", self.name()), AUT_LIST_CAP, self.aut_order()))
    }

    /// An isomorphism onto `other`, if one exists.
    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Option<GroupMap> {
        group_isomorphic(self, other)
    }

    /// The inversion map, an automorphism exactly when the group is abelian.
    pub fn inversion_map(&self) -> GroupMap {
        GroupMap::from_images(self.elements().map(|x| self.inv(x)).collect())
    }
}

/// Closure of a point set under a list of maps.
pub(crate) fn orbit_under(start: ElemSet, maps: &[GroupMap]) -> ElemSet {
    let mut orbit = start;
    let mut frontier: Vec<usize> = start.to_vec();
    while let Some(x) = frontier.pop() {
        for m in maps {
            let y = m.apply(x);
            if !orbit.contains(y) {
                orbit = orbit.with(y);
                frontier.push(y);
            }
        }
    }
    orbit
}
