//! Searching for an element of a permutation group that conjugates one
//! subgroup onto another.

use std::collections::HashMap;

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// Ambient groups up to this order are searched by plain enumeration.
const EXHAUSTIVE_LIMIT: u128 = 5_000;
/// Largest target subgroup whose elements we list while matching generators.
const SUBGROUP_ELEMENT_CAP: u128 = 1_000_000;
/// Default cap on search nodes before giving up with a budget error.
pub const DEFAULT_CONJUGACY_BUDGET: u64 = 200_000_000;

/// Returns `x ∈ a` with `x⁻¹ h1 x = h2`, or `None` when no such element exists.
///
/// Both subgroups must lie in `a`; otherwise a `SubgroupNotContained` error is returned.
pub fn conjugating_element(a: &PermGroup, h1: &PermGroup, h2: &PermGroup) -> Result<Option<Permutation>> {
    conjugating_element_with_budget(a, h1, h2, DEFAULT_CONJUGACY_BUDGET)
}

pub fn conjugating_element_with_budget(
    a: &PermGroup,
    h1: &PermGroup,
    h2: &PermGroup,
    budget: u64,
) -> Result<Option<Permutation>> {
    if h1.degree() != a.degree() || h2.degree() != a.degree() {
        return Err(Error::MalformedInput("subgroups must share the ambient degree".into()));
    }
    if !a.contains_group(h1) || !a.contains_group(h2) {
        return Err(Error::SubgroupNotContained);
    }
    if h1.order() != h2.order() {
        return Ok(None);
    }
    let found = if a.order() <= EXHAUSTIVE_LIMIT { exhaustive(a, h1, h2) } else { structured(a, h1, h2, budget)? };
    if let Some(x) = &found {
        let ok = a.contains(x) && h1.generators().iter().all(|g| h2.contains(&g.conjugate_by(x)));
        if !ok {
            return Err(Error::Internal("conjugating element failed verification".into()));
        }
    }
    Ok(found)
}

/// Enumeration route: test every element of `a`.
pub(crate) fn exhaustive(a: &PermGroup, h1: &PermGroup, h2: &PermGroup) -> Option<Permutation> {
    let mut found = None;
    a.for_each_element(|x| {
        if h1.generators().iter().all(|g| h2.contains(&g.conjugate_by(x))) {
            found = Some(x.clone());
            false
        } else {
            true
        }
    });
    found
}

/// One step of the breadth-first walk over an orbit of `h1`: `point` is
/// reached from `parent` by generator `gen`.
struct Step {
    point: usize,
    parent: usize,
    gen: usize,
}

struct Search<'a> {
    degree: usize,
    chain: PermGroup,
    gens1: Vec<Permutation>,
    by_cycle_type: HashMap<Vec<usize>, Vec<Permutation>>,
    h2_orbit_size: Vec<usize>,
    h2_orbit_reps: Vec<usize>,
    orbits: Vec<Vec<Step>>,
    h1: &'a PermGroup,
    h2: &'a PermGroup,
    nodes: u64,
    budget: u64,
}

fn structured(a: &PermGroup, h1: &PermGroup, h2: &PermGroup, budget: u64) -> Result<Option<Permutation>> {
    let degree = a.degree();
    if h1.is_trivial() {
        return Ok(Some(Permutation::identity(degree)));
    }
    // Irredundant generating sequence of h1.
    let mut gens1: Vec<Permutation> = Vec::new();
    let mut sub = PermGroup::trivial(degree);
    for g in h1.generators() {
        if !sub.contains(g) {
            gens1.push(g.clone());
            sub = PermGroup::new(degree, gens1.clone())?;
        }
    }
    let mut by_cycle_type: HashMap<Vec<usize>, Vec<Permutation>> = HashMap::new();
    for x in h2.enumerate_elements(SUBGROUP_ELEMENT_CAP)? {
        by_cycle_type.entry(x.cycle_type()).or_default().push(x);
    }

    let mut h2_orbit_size = vec![0; degree];
    let mut h2_orbit_reps = Vec::new();
    for o in h2.orbits() {
        h2_orbit_reps.push(o[0]);
        for &p in &o {
            h2_orbit_size[p] = o.len();
        }
    }

    let mut orbits = Vec::new();
    let mut seen = vec![false; degree];
    for q in 0..degree {
        if seen[q] {
            continue;
        }
        seen[q] = true;
        let mut steps = vec![Step { point: q, parent: q, gen: usize::MAX }];
        let mut pos = 0;
        while pos < steps.len() {
            let p = steps[pos].point;
            for (j, g) in gens1.iter().enumerate() {
                let r = g.apply(p);
                if !seen[r] {
                    seen[r] = true;
                    steps.push(Step { point: r, parent: p, gen: j });
                }
            }
            pos += 1;
        }
        orbits.push(steps);
    }
    // Larger orbits first constrains the chain sooner.
    orbits.sort_by_key(|o| std::cmp::Reverse(o.len()));
    let order: Vec<usize> = orbits.iter().flat_map(|o| o.iter().map(|s| s.point)).collect();
    let chain = PermGroup::with_base(degree, a.strong_generators(), &order)?;

    let mut search =
        Search { degree, chain, gens1, by_cycle_type, h2_orbit_size, h2_orbit_reps, orbits, h1, h2, nodes: 0, budget };
    let mut images = Vec::new();
    let mut closure: HashMap<Permutation, Permutation> = HashMap::new();
    closure.insert(Permutation::identity(degree), Permutation::identity(degree));
    search.match_generators(&mut images, closure)
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(format!("conjugacy search exceeded {} nodes", self.budget)));
        }
        Ok(())
    }

    /// Chooses images for the generators of h1 so that they extend to an
    /// injective homomorphism into h2, then tries to realise it by a point map.
    fn match_generators(
        &mut self,
        images: &mut Vec<Permutation>,
        closure: HashMap<Permutation, Permutation>,
    ) -> Result<Option<Permutation>> {
        let j = images.len();
        if j == self.gens1.len() {
            if closure.len() as u128 != self.h1.order() {
                return Ok(None);
            }
            let mut targets: Vec<&Permutation> = closure.values().collect();
            targets.sort();
            targets.dedup();
            if targets.len() != closure.len() {
                return Ok(None);
            }
            let mut f = vec![usize::MAX; self.degree];
            let mut used = vec![false; self.degree];
            let w = Permutation::identity(self.degree);
            return self.assign_orbit(0, images, &mut f, &mut used, 0, w);
        }
        let ct = self.gens1[j].cycle_type();
        let candidates = self.by_cycle_type.get(&ct).cloned().unwrap_or_default();
        for c in candidates {
            self.tick()?;
            images.push(c);
            if let Some(next) = extend_homomorphism(&closure, &self.gens1, images, self.h1.order()) {
                if let Some(x) = self.match_generators(images, next)? {
                    return Ok(Some(x));
                }
            }
            images.pop();
        }
        Ok(None)
    }

    /// Assigns the image of orbit `r` of h1 (all points), descending the
    /// chain of `a` one base point at a time.
    fn assign_orbit(
        &mut self,
        r: usize,
        images: &[Permutation],
        f: &mut Vec<usize>,
        used: &mut Vec<bool>,
        level: usize,
        w: Permutation,
    ) -> Result<Option<Permutation>> {
        if r == self.orbits.len() {
            let x = w;
            let ok = self.h1.generators().iter().all(|g| self.h2.contains(&g.conjugate_by(&x)));
            return Ok(if ok { Some(x) } else { None });
        }
        let size = self.orbits[r].len();
        let starts: Vec<usize> = if r == 0 {
            self.h2_orbit_reps.iter().copied().filter(|&p| self.h2_orbit_size[p] == size).collect()
        } else {
            (0..self.degree).filter(|&p| !used[p] && self.h2_orbit_size[p] == size).collect()
        };
        for start in starts {
            self.tick()?;
            let mut assigned = Vec::with_capacity(size);
            let mut cur_level = level;
            let mut cur_w = w.clone();
            let mut ok = true;
            for (k, step) in self.orbits[r].iter().enumerate() {
                let img = if k == 0 { start } else { images[step.gen].apply(f[step.parent]) };
                if used[img] {
                    ok = false;
                    break;
                }
                // descend the chain: this point is the next base point
                match step_chain(&self.chain, cur_level, &cur_w, step.point, img) {
                    Some((l, nw)) => {
                        cur_level = l;
                        cur_w = nw;
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
                f[step.point] = img;
                used[img] = true;
                assigned.push(step.point);
            }
            if ok {
                // every generator edge inside the orbit must be respected
                ok = self.orbits[r].iter().all(|s| {
                    let p = s.point;
                    images.iter().zip(&self.gens1).all(|(phi, g)| f[g.apply(p)] == phi.apply(f[p]))
                });
            }
            if ok {
                if let Some(x) = self.assign_orbit(r + 1, images, f, used, cur_level, cur_w)? {
                    return Ok(Some(x));
                }
            }
            for p in assigned {
                used[f[p]] = false;
                f[p] = usize::MAX;
            }
        }
        Ok(None)
    }
}

/// Requires the unknown element `x = y·w` (with `y` in the stabilizer at
/// `level`) to send `point` to `img`. `point` must be the base point of
/// `level`, or fixed by that stabilizer once the chain is exhausted.
fn step_chain(
    chain: &PermGroup,
    level: usize,
    w: &Permutation,
    point: usize,
    img: usize,
) -> Option<(usize, Permutation)> {
    match chain.levels.get(level) {
        Some(l) if l.base == point => {
            let delta = w.inverse().apply(img);
            let rep = l.rep_of(delta)?;
            Some((level + 1, rep.then(w)))
        }
        _ => {
            if w.apply(point) == img {
                Some((level, w.clone()))
            } else {
                None
            }
        }
    }
}

/// Extends a partial homomorphism (given on the subgroup generated by the
/// first `images.len() - 1` generators) by the newest generator image,
/// returning `None` on inconsistency or when the domain grows past `limit`.
pub(crate) fn extend_homomorphism(
    closure: &HashMap<Permutation, Permutation>,
    gens: &[Permutation],
    images: &[Permutation],
    limit: u128,
) -> Option<HashMap<Permutation, Permutation>> {
    let k = images.len();
    let mut map = closure.clone();
    let mut queue: Vec<Permutation> = map.keys().cloned().collect();
    queue.sort();
    let mut pos = 0;
    while pos < queue.len() {
        let x = queue[pos].clone();
        let fx = map[&x].clone();
        for j in 0..k {
            let y = x.then(&gens[j]);
            let fy = fx.then(&images[j]);
            match map.get(&y) {
                Some(existing) => {
                    if *existing != fy {
                        return None;
                    }
                }
                None => {
                    map.insert(y.clone(), fy);
                    queue.push(y);
                    if map.len() as u128 > limit {
                        return None;
                    }
                }
            }
        }
        pos += 1;
    }
    Some(map)
}
