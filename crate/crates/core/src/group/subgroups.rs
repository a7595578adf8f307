use std::collections::HashSet;
use std::sync::Arc;

use super::{ElemSet, FiniteGroup, GroupMap, LabelStyle};
use crate::error::{Error, Result};

/// A subgroup of a table group, as the set of its member indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub members: ElemSet,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }
}

impl FiniteGroup {
    /// Every subgroup exactly once, sorted by order and then by member list.
    ///
    /// Built as the join-closure of the cyclic subgroups: every subgroup is
    /// generated by its cyclic subgroups.
    pub fn all_subgroups(&self) -> Arc<Vec<Subgroup>> {
        self.subgroup_cache
            .get_or_init(|| {
                let mut cyclic: Vec<ElemSet> = Vec::new();
                for x in self.elements() {
                    let c = self.closure(ElemSet::singleton(x));
                    if !cyclic.contains(&c) {
                        cyclic.push(c);
                    }
                }
                let mut seen: HashSet<ElemSet> = cyclic.iter().copied().collect();
                let mut list: Vec<ElemSet> = cyclic.clone();
                let mut pos = 0;
                while pos < list.len() {
                    let h = list[pos];
                    for &c in &cyclic {
                        if c.is_subset(h) {
                            continue;
                        }
                        let j = self.closure(h.union(c));
                        if seen.insert(j) {
                            list.push(j);
                        }
                    }
                    pos += 1;
                }
                list.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(*b)));
                Arc::new(list.into_iter().map(|members| Subgroup { members }).collect())
            })
            .clone()
    }

    pub fn is_subgroup(&self, s: ElemSet) -> bool {
        s.contains(0) && self.closure(s) == s
    }

    /// `x⁻¹ N x = N` for every `x`.
    pub fn is_normal(&self, n: ElemSet) -> bool {
        self.is_subgroup(n) && self.elements().all(|x| n.iter().all(|a| n.contains(self.conj(a, x))))
    }

    /// `G/N` with the least element of each coset as its representative, and
    /// the projection `G → G/N`. Cosets are ordered by representative.
    pub fn quotient_group(&self, n: ElemSet) -> Result<(FiniteGroup, GroupMap)> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for x in self.elements() {
            if coset_of[x] == usize::MAX {
                let idx = reps.len();
                reps.push(x);
                for a in n.iter() {
                    coset_of[self.mul(x, a)] = idx;
                }
            }
        }
        let labels = reps.iter().map(|&r| self.label(r).to_string()).collect();
        let q = FiniteGroup::from_fn(
            format!("{}/N", self.name()),
            reps.len(),
            |a, b| coset_of[self.mul(reps[a], reps[b])],
            labels,
            LabelStyle::Plain,
        )?;
        Ok((q, GroupMap::from_images(coset_of)))
    }

    /// Commutator subgroup `[G, G]`.
    pub fn derived_subgroup(&self, h: ElemSet) -> ElemSet {
        let mut comms = ElemSet::singleton(0);
        for a in h.iter() {
            for b in h.iter() {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                comms = comms.with(c);
            }
        }
        self.closure(comms)
    }

    /// The derived series reaches the trivial group.
    pub fn is_solvable(&self) -> bool {
        let mut h = self.all();
        loop {
            if h.len() == 1 {
                return true;
            }
            let d = self.derived_subgroup(h);
            if d == h {
                return false;
            }
            h = d;
        }
    }
}
