use rand::Rng;

use super::Permutation;
use crate::error::{Error, Result};

/// One level of a stabilizer chain.
///
/// `gens` are the strong generators fixing every earlier base point,
/// `orbit` is the orbit of `base` under them in discovery order and
/// `reps[slot[p]]` maps `base` to `p`.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) base: usize,
    pub(crate) gens: Vec<Permutation>,
    pub(crate) orbit: Vec<usize>,
    pub(crate) slot: Vec<u32>,
    pub(crate) reps: Vec<Permutation>,
    pub(crate) reps_inv: Vec<Permutation>,
    /// For each orbit position, how many generators have had their Schreier
    /// generator sifted already.
    tested: Vec<usize>,
}

const NO_SLOT: u32 = u32::MAX;

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut slot = vec![NO_SLOT; degree];
        slot[base] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            slot,
            reps: vec![Permutation::identity(degree)],
            reps_inv: vec![Permutation::identity(degree)],
            tested: vec![0],
        }
    }

    /// Grows the orbit under the current generators, keeping existing
    /// transversal elements untouched.
    fn extend_orbit(&mut self) {
        let mut pos = 0;
        while pos < self.orbit.len() {
            let p = self.orbit[pos];
            for g in &self.gens {
                let q = g.apply(p);
                if self.slot[q] == NO_SLOT {
                    let rep = self.reps[self.slot[p] as usize].then(g);
                    self.slot[q] = self.reps.len() as u32;
                    self.reps_inv.push(rep.inverse());
                    self.reps.push(rep);
                    self.orbit.push(q);
                    self.tested.push(0);
                }
            }
            pos += 1;
        }
    }

    #[inline]
    pub(crate) fn rep_of(&self, p: usize) -> Option<&Permutation> {
        match self.slot[p] {
            NO_SLOT => None,
            s => Some(&self.reps[s as usize]),
        }
    }

    #[inline]
    pub(crate) fn rep_inv_of(&self, p: usize) -> Option<&Permutation> {
        match self.slot[p] {
            NO_SLOT => None,
            s => Some(&self.reps_inv[s as usize]),
        }
    }
}

/// A permutation group given by generators, indexed by a stabilizer chain
/// built with the deterministic Schreier–Sims algorithm.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    pub(crate) levels: Vec<Level>,
}

impl PermGroup {
    /// Group generated by `gens` on `degree` points, base in ascending order.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::with_base(degree, gens, &[])
    }

    /// Group generated by `gens`; the degree is taken from the first generator.
    pub fn from_generators(gens: Vec<Permutation>) -> Result<Self> {
        let degree = gens
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::MalformedInput("no generators and no degree given".into()))?;
        Self::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), levels: Vec::new() }
    }

    /// Builds the chain so that its base starts with `prefix` (in that order,
    /// redundant points included) and continues with least moved points.
    pub fn with_base(degree: usize, gens: Vec<Permutation>, prefix: &[usize]) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::MalformedInput(format!(
                    "generator of degree {} in a group of degree {degree}",
                    g.degree()
                )));
            }
        }
        if let Some(&p) = prefix.iter().find(|&&p| p >= degree) {
            return Err(Error::MalformedInput(format!("base point {p} out of range")));
        }
        let generators: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let mut group = PermGroup { degree, generators, levels: Vec::new() };
        if group.generators.is_empty() {
            return Ok(group);
        }
        for &b in prefix {
            group.levels.push(Level::new(degree, b));
        }
        for g in group.generators.clone() {
            let mut l = 0;
            loop {
                if l == group.levels.len() {
                    group.push_level_for(&g);
                }
                group.levels[l].gens.push(g.clone());
                if g.apply(group.levels[l].base) != group.levels[l].base {
                    break;
                }
                l += 1;
            }
        }
        group.schreier_sims();
        Ok(group)
    }

    fn push_level_for(&mut self, h: &Permutation) {
        let moved = (0..self.degree).find(|&p| h.apply(p) != p).expect("nontrivial element");
        self.levels.push(Level::new(self.degree, moved));
    }

    fn schreier_sims(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            self.levels[li].extend_orbit();
            let mut jump = None;
            'scan: for k in 0..self.levels[li].orbit.len() {
                while self.levels[li].tested[k] < self.levels[li].gens.len() {
                    let gi = self.levels[li].tested[k];
                    self.levels[li].tested[k] += 1;
                    let level = &self.levels[li];
                    let p = level.orbit[k];
                    let g = &level.gens[gi];
                    let q = g.apply(p);
                    let schreier = level.reps[k].then(g).then(level.rep_inv_of(q).expect("orbit closed"));
                    let (h, drop) = self.sift_from(schreier, li + 1);
                    if !h.is_identity() {
                        if drop == self.levels.len() {
                            self.push_level_for(&h);
                        }
                        for l in li + 1..=drop {
                            self.levels[l].gens.push(h.clone());
                        }
                        jump = Some(drop);
                        break 'scan;
                    }
                }
            }
            match jump {
                Some(d) => {
                    for l in li + 1..=d {
                        self.levels[l].extend_orbit();
                    }
                    i = d as isize;
                }
                None => i -= 1,
            }
        }
        // Drop trailing levels whose subgroup is trivial.
        while self.levels.last().is_some_and(|l| l.gens.is_empty()) {
            self.levels.pop();
        }
    }

    /// Sifts `g` through the levels starting at `start`; returns the residue
    /// and the level at which sifting stopped (`levels.len()` when it passed).
    fn sift_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let p = g.apply(level.base);
            match level.rep_inv_of(p) {
                Some(inv) => g = g.then(inv),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The non-identity generators this group was built from.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Group order, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (h, drop) = self.sift_from(p.clone(), 0);
        drop == self.levels.len() && h.is_identity()
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains(g))
    }

    /// Orbits as sorted blocks, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn orbit_of(&self, p: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[p] = true;
        let mut out = vec![p];
        let mut pos = 0;
        while pos < out.len() {
            let q = out[pos];
            for g in &self.generators {
                let r = g.apply(q);
                if !seen[r] {
                    seen[r] = true;
                    out.push(r);
                }
            }
            pos += 1;
        }
        out.sort_unstable();
        out
    }

    /// Whether only the identity fixes a point, together with the orbit count.
    pub fn is_semiregular(&self) -> (bool, usize) {
        let orbits = self.orbits();
        let order = self.order();
        let semi = orbits.iter().all(|o| o.len() as u128 == order);
        (semi, orbits.len())
    }

    /// All elements in a deterministic order, or a cap error when the group is larger than `cap`.
    pub fn enumerate_elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > cap {
            return Err(Error::cap("group order", cap, order));
        }
        let mut out = Vec::with_capacity(order as usize);
        self.for_each_element(|p| {
            out.push(p.clone());
            true
        });
        Ok(out)
    }

    /// Visits every element (deterministic order) until `visit` returns false.
    /// Returns false when stopped early.
    pub fn for_each_element(&self, mut visit: impl FnMut(&Permutation) -> bool) -> bool {
        fn rec(levels: &[Level], acc: &Permutation, visit: &mut dyn FnMut(&Permutation) -> bool) -> bool {
            match levels.split_last() {
                None => visit(acc),
                Some((last, rest)) => {
                    // element = u_k ... u_1; build from the deepest level outwards
                    for rep in &last.reps {
                        let next = acc.then(rep);
                        if !rec(rest, &next, visit) {
                            return false;
                        }
                    }
                    true
                }
            }
        }
        rec(&self.levels, &Permutation::identity(self.degree), &mut visit)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let k = rng.gen_range(0..level.reps.len());
            acc = acc.then(&level.reps[k]);
        }
        acc
    }

    /// Pointwise stabilizer of `points` (built by rebasing).
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        let rebased = PermGroup::with_base(self.degree, self.strong_generators(), points)?;
        let gens = rebased.levels.get(points.len()).map(|l| l.gens.clone()).unwrap_or_default();
        PermGroup::new(self.degree, gens)
    }

    /// Setwise stabilizer, found by filtering a complete enumeration.
    pub fn setwise_stabilizer(&self, set: &[usize], cap: u128) -> Result<PermGroup> {
        let mut member = vec![false; self.degree];
        for &p in set {
            member[p] = true;
        }
        let mut gens: Vec<Permutation> = Vec::new();
        let mut sub = PermGroup::trivial(self.degree);
        let order = self.order();
        if order > cap {
            return Err(Error::cap("setwise stabilizer enumeration", cap, order));
        }
        self.for_each_element(|p| {
            if set.iter().all(|&q| member[p.apply(q)]) && !sub.contains(p) {
                gens.push(p.clone());
                sub = PermGroup::new(self.degree, gens.clone()).expect("same degree");
            }
            true
        });
        Ok(sub)
    }

    /// Union of all strong generators across levels, deduplicated.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        if out.is_empty() {
            out = self.generators.clone();
        }
        out
    }

    /// Subgroup `x⁻¹ H x`.
    pub fn conjugate(&self, x: &Permutation) -> PermGroup {
        let gens = self.generators.iter().map(|g| g.conjugate_by(x)).collect();
        PermGroup::new(self.degree, gens).expect("same degree")
    }
}

pub(crate) fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for p in 0..degree {
            let a = find(&mut parent, p);
            let b = find(&mut parent, g.apply(p));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut index_of_root = vec![usize::MAX; degree];
    for p in 0..degree {
        let r = find(&mut parent, p);
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index_of_root[r]].push(p);
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use std::collections::HashSet;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    /// Brute-force closure used as an independent order oracle.
    fn closure_size(degree: usize, gens: &[Permutation]) -> usize {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let id = Permutation::identity(degree);
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn cyclic_three() {
        let g = PermGroup::from_generators(vec![perm(&[1, 2, 0])]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.enumerate_elements(10).unwrap().len(), 3);
    }

    #[test]
    fn symmetric_eight_from_transposition_and_cycle() {
        let t = Permutation::from_cycles(8, &[vec![0, 1]]).unwrap();
        let c = Permutation::from_cycles(8, &[(0..8).collect()]).unwrap();
        let g = PermGroup::from_generators(vec![t.clone(), c.clone()]).unwrap();
        assert_eq!(closure_size(8, &[t, c]), 40320);
        assert_eq!(g.order(), 40320);
        match g.enumerate_elements(10_000) {
            Err(Error::CapExceeded { needed, .. }) => assert_eq!(needed, 40320),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn trivial_group_behaviour() {
        let g = PermGroup::trivial(4);
        assert_eq!(g.orbits(), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(g.enumerate_elements(1).unwrap(), vec![Permutation::identity(4)]);
        assert_eq!(g.is_semiregular(), (true, 4));
    }

    #[test]
    fn orbits_and_semiregularity() {
        let g = PermGroup::from_generators(vec![perm(&[1, 0, 3, 2])]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(g.is_semiregular(), (true, 2));
        let t = PermGroup::from_generators(vec![perm(&[1, 0, 2])]).unwrap();
        assert_eq!(t.is_semiregular(), (false, 2));
        let s4 = PermGroup::from_generators(vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])]).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.is_semiregular(), (false, 1));
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let r = PermGroup::from_generators(vec![perm(&[1, 0]), perm(&[1, 2, 0])]);
        assert!(matches!(r, Err(Error::MalformedInput(_))));
    }

    #[test]
    fn prescribed_base_keeps_order() {
        let t = Permutation::from_cycles(6, &[vec![0, 1]]).unwrap();
        let c = Permutation::from_cycles(6, &[(0..6).collect()]).unwrap();
        let g = PermGroup::with_base(6, vec![t, c], &[5, 3, 1]).unwrap();
        assert_eq!(&g.base()[..3], &[5, 3, 1]);
        assert_eq!(g.order(), 720);
        let stab = g.pointwise_stabilizer(&[0, 1]).unwrap();
        assert_eq!(stab.order(), 24);
    }

    #[test]
    fn random_elements_are_members() {
        let t = Permutation::from_cycles(7, &[vec![0, 1, 2]]).unwrap();
        let c = Permutation::from_cycles(7, &[(0..7).collect()]).unwrap();
        let g = PermGroup::from_generators(vec![t, c]).unwrap();
        assert_eq!(g.order(), 2520);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            assert!(g.contains(&g.random_element(&mut rng)));
        }
        let odd = Permutation::from_cycles(7, &[vec![0, 1]]).unwrap();
        assert!(!g.contains(&odd));
    }

    #[test]
    fn enumeration_matches_closure_on_small_groups() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 2..7usize {
            for _ in 0..6 {
                let k = rng.gen_range(1..3);
                let gens: Vec<Permutation> = (0..k)
                    .map(|_| {
                        let mut v: Vec<usize> = (0..n).collect();
                        for i in (1..n).rev() {
                            v.swap(i, rng.gen_range(0..=i));
                        }
                        perm(&v)
                    })
                    .collect();
                let g = PermGroup::new(n, gens.clone()).unwrap();
                let all = g.enumerate_elements(10_000).unwrap();
                let distinct: HashSet<_> = all.iter().cloned().collect();
                assert_eq!(distinct.len(), all.len());
                assert_eq!(all.len(), closure_size(n, &gens));
                assert_eq!(g.order() as usize, all.len());
            }
        }
    }
}
