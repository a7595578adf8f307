//! Semiregular subgroups of `Aut(Γ)` isomorphic to `G` with `m` orbits, up to conjugacy.
//!
//! A semiregular subgroup `H` is determined by where it sends the base vertex
//! `b = 0`: every `h ∈ H` is the unique element with its image of `b`. The
//! search builds each `H` from its canonical generating sequence, where the
//! `j`-th generator sends `b` to the least vertex of `b^H` outside the orbit of
//! the group generated so far. Candidates for a generator sending `b` to `t`
//! are the elements `s·u_t` with `s` in the stabilizer of `b` and `u_t` a fixed
//! transversal element. Each subgroup is reached along exactly one path.

use std::collections::HashMap;

use crate::budget::{exceeded, Budgets};
use crate::error::{Error, Result};
use crate::group::{group_isomorphic, FiniteGroup};
use crate::iso::{automorphisms, ColorMode, ColoredDigraph};
use crate::mcayley::{right_regular, MCayleyDigraph};
use crate::perm::{PermGroup, Permutation};

/// Largest vertex stabilizer whose elements are listed for candidate generation.
const STABILIZER_CAP: u128 = 4_000_000;
/// Largest number of subgroups kept before the search gives up.
const SUBGROUP_CAP: usize = 500_000;

const NONE: u32 = u32::MAX;

/// One conjugacy class of semiregular subgroups.
#[derive(Clone, Debug)]
pub struct SemiregularClass {
    pub representative: PermGroup,
    /// Number of subgroups found in the class.
    pub subgroups: usize,
    /// The class contains `R(G)`.
    pub contains_regular_copy: bool,
}

#[derive(Clone, Debug)]
pub struct SemiregularSubgroups {
    pub same_orbit_set: bool,
    /// The group whose conjugation defines the classes.
    pub ambient: PermGroup,
    /// Classes of subgroups isomorphic to `G`; the class of `R(G)` comes first.
    pub classes: Vec<SemiregularClass>,
    /// Classes of semiregular subgroups of order `|G|` not isomorphic to `G`.
    pub other_classes: usize,
    /// Candidate extensions tried.
    pub nodes: u64,
}

impl SemiregularSubgroups {
    /// The first class not containing `R(G)`, if any.
    pub fn non_conjugate_witness(&self) -> Option<&SemiregularClass> {
        self.classes.iter().find(|c| !c.contains_regular_copy)
    }
}

/// Lists the classes of semiregular subgroups `H ≤ Aut(Γ)` with `H ≅ G`.
///
/// With `same_orbit_set` the subgroups must have the parts as their orbits;
/// they are searched inside the part-preserving automorphisms and classified
/// by conjugation in the automorphisms preserving the part system. Otherwise
/// all of `Aut(Γ)` is used for both.
pub fn semiregular_subgroups(
    d: &MCayleyDigraph,
    same_orbit_set: bool,
    budgets: &Budgets,
) -> Result<SemiregularSubgroups> {
    let g = d.group();
    let n = g.order();
    let nv = d.vertex_count();
    let (search_group, ambient) = if same_orbit_set {
        let cd = ColoredDigraph::from_mcayley(d);
        (automorphisms(&cd, ColorMode::Fixed)?, automorphisms(&cd, ColorMode::Permutable)?)
    } else {
        let a = automorphisms(&ColoredDigraph::uncolored(d.adjacency().clone()), ColorMode::Fixed)?;
        (a.clone(), a)
    };

    let chain = PermGroup::with_base(nv, search_group.strong_generators(), &[0])?;
    let stab = chain.pointwise_stabilizer(&[0])?.enumerate_elements(STABILIZER_CAP)?;
    let mut targets = vec![false; nv];
    if same_orbit_set {
        targets[..n].iter_mut().for_each(|t| *t = true);
    } else {
        search_group.orbit_of(0).into_iter().for_each(|v| targets[v] = true);
    }

    let mut search = Search {
        n,
        degree: nv,
        same_orbit_set,
        targets,
        chain: &chain,
        stab: &stab,
        order_budget: g.order_histogram(),
        candidates: HashMap::new(),
        nodes: 0,
        budget: budgets.search,
        found: Vec::new(),
    };
    let start = Subgroup::trivial(nv);
    let skipped = vec![false; nv];
    search.dfs(&start, &skipped)?;
    let nodes = search.nodes;
    let found = search.found;

    // union-find over conjugation by the ambient generators
    let index: HashMap<&[Permutation], usize> =
        found.iter().enumerate().map(|(i, f)| (f.elements.as_slice(), i)).collect();
    let mut parent: Vec<usize> = (0..found.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, f) in found.iter().enumerate() {
        for a in ambient.generators() {
            let mut conj: Vec<Permutation> = f.elements.iter().map(|h| h.conjugate_by(a)).collect();
            conj.sort();
            let j = *index
                .get(conj.as_slice())
                .ok_or_else(|| Error::Internal("conjugate of a semiregular subgroup was not found".into()))?;
            let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }

    let regular = right_regular(g, d.parts());
    let mut regular_elems = regular.enumerate_elements(n as u128)?;
    regular_elems.sort();
    let regular_idx = *index
        .get(regular_elems.as_slice())
        .ok_or_else(|| Error::Internal("R(G) is missing from the semiregular subgroups".into()))?;
    let regular_root = root(&mut parent, regular_idx);

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); found.len()];
    for i in 0..found.len() {
        let r = root(&mut parent, i);
        members[r].push(i);
    }
    let mut classes = Vec::new();
    let mut other_classes = 0;
    for (r, list) in members.iter().enumerate() {
        if list.is_empty() {
            continue;
        }
        let rep = &found[r];
        let abstract_group = FiniteGroup::from_permutations("H", nv, &rep.generators)?;
        if group_isomorphic(g, &abstract_group).is_none() {
            other_classes += 1;
            continue;
        }
        classes.push(SemiregularClass {
            representative: PermGroup::new(nv, rep.generators.clone())?,
            subgroups: list.len(),
            contains_regular_copy: r == regular_root,
        });
    }
    classes.sort_by_key(|c| !c.contains_regular_copy);
    Ok(SemiregularSubgroups { same_orbit_set, ambient, classes, other_classes, nodes })
}

/// A semiregular subgroup under construction: its elements indexed by the
/// image of the base vertex.
#[derive(Clone)]
struct Subgroup {
    elements: Vec<Permutation>,
    by_image: Vec<u32>,
    generators: Vec<Permutation>,
    order_counts: Vec<usize>,
}

impl Subgroup {
    fn trivial(degree: usize) -> Self {
        let mut by_image = vec![NONE; degree];
        by_image[0] = 0;
        Subgroup {
            elements: vec![Permutation::identity(degree)],
            by_image,
            generators: Vec::new(),
            order_counts: vec![1],
        }
    }
}

struct Search<'a> {
    n: usize,
    degree: usize,
    same_orbit_set: bool,
    targets: Vec<bool>,
    chain: &'a PermGroup,
    stab: &'a [Permutation],
    /// Number of elements of each order in `G`.
    order_budget: Vec<usize>,
    candidates: HashMap<usize, Vec<Permutation>>,
    nodes: u64,
    budget: u64,
    found: Vec<Subgroup>,
}

/// Order of a permutation whose cycles all have the same length, or `None`
/// when it has a fixed point or cycles of different lengths.
fn uniform_cycle_length(p: &Permutation) -> Option<usize> {
    let n = p.degree();
    let mut seen = vec![false; n];
    let mut length = None;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut q = start;
        while !seen[q] {
            seen[q] = true;
            q = p.apply(q);
            len += 1;
        }
        match length {
            None if len > 1 => length = Some(len),
            Some(l) if l == len => {}
            _ => return None,
        }
    }
    length
}

impl Search<'_> {
    /// Candidates sending the base vertex to `t`.
    fn candidates_for(&mut self, t: usize) -> &[Permutation] {
        let order_budget = &self.order_budget;
        let rep = self.chain.levels.first().and_then(|l| l.rep_of(t)).cloned();
        let stab = self.stab;
        self.candidates.entry(t).or_insert_with(|| {
            let Some(u) = rep else { return Vec::new() };
            stab.iter()
                .filter_map(|s| {
                    let x = s.then(&u);
                    let o = uniform_cycle_length(&x)?;
                    (o < order_budget.len() && order_budget[o] > 0).then_some(x)
                })
                .collect()
        })
    }

    fn dfs(&mut self, h: &Subgroup, skipped: &[bool]) -> Result<()> {
        if h.elements.len() == self.n {
            if self.found.len() >= SUBGROUP_CAP {
                return Err(Error::cap("semiregular subgroups", SUBGROUP_CAP as u128, SUBGROUP_CAP as u128 + 1));
            }
            let mut done = h.clone();
            done.elements.sort();
            self.found.push(done);
            return Ok(());
        }
        let open: Vec<usize> =
            (0..self.degree).filter(|&v| self.targets[v] && !skipped[v] && h.by_image[v] == NONE).collect();
        let branch_targets: Vec<usize> =
            if self.same_orbit_set { open.iter().copied().take(1).collect() } else { open.clone() };
        let mut skipped = skipped.to_vec();
        let mut available = open.len() + h.elements.len();
        for t in branch_targets {
            if available < self.n {
                break;
            }
            let cands = self.candidates_for(t).to_vec();
            for x in cands {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(exceeded("semiregular subgroup search nodes", self.budget));
                }
                if let Some(next) = self.extend(h, &x, &skipped) {
                    self.dfs(&next, &skipped)?;
                }
            }
            // later branches must not reach `t`
            skipped[t] = true;
            available -= 1;
        }
        Ok(())
    }

    /// `⟨H, x⟩` if it is still semiregular, avoids the skipped vertices, has
    /// order dividing `|G|` and no more elements of any order than `G`.
    fn extend(&self, h: &Subgroup, x: &Permutation, skipped: &[bool]) -> Option<Subgroup> {
        let mut next = h.clone();
        next.generators.push(x.clone());
        let old = h.elements.len();
        if !self.admit(&mut next, x.clone(), skipped) {
            return None;
        }
        // old elements are already closed under the old generators
        let mut pos = 0;
        while pos < next.elements.len() {
            let e = next.elements[pos].clone();
            let gens = if pos < old { std::slice::from_ref(x).to_vec() } else { next.generators.clone() };
            for gen in &gens {
                if !self.admit(&mut next, e.then(gen), skipped) {
                    return None;
                }
            }
            pos += 1;
        }
        self.n.is_multiple_of(next.elements.len()).then_some(next)
    }

    /// Adds `p` unless it is already present; false when `p` breaks semiregularity
    /// or one of the search constraints.
    fn admit(&self, h: &mut Subgroup, p: Permutation, skipped: &[bool]) -> bool {
        let v = p.apply(0);
        if h.by_image[v] != NONE {
            return h.elements[h.by_image[v] as usize] == p;
        }
        if skipped[v] || !self.targets[v] || h.elements.len() == self.n {
            return false;
        }
        let Some(o) = uniform_cycle_length(&p) else {
            return false;
        };
        if o >= self.order_budget.len() {
            return false;
        }
        if h.order_counts.len() <= o {
            h.order_counts.resize(o + 1, 0);
        }
        h.order_counts[o] += 1;
        if h.order_counts[o] > self.order_budget[o] {
            return false;
        }
        h.by_image[v] = h.elements.len() as u32;
        h.elements.push(p);
        true
    }
}
