//! Orbits of connection sets under the kernel action or under `Aut(G)`.

use std::cmp::Ordering;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::budget::{exceeded, Budgets};
use crate::error::{Error, Result};
use crate::group::{ElemSet, FiniteGroup};
use crate::perm::{PermGroup, Permutation};

/// The group acting on connection sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetAction {
    /// `S ↦ (h⁻¹ S g)^α`: the connection-set image of a kernel element.
    Kernel,
    /// `S ↦ S^α`.
    Automorphisms,
}

/// Conditions a connection set must satisfy to be counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SubsetConstraints {
    pub contains_identity: bool,
    /// `⟨S S⁻¹⟩ = G`, i.e. `BCay(G, S)` is connected.
    pub connected: bool,
}

impl SubsetConstraints {
    pub fn admits(&self, g: &FiniteGroup, s: ElemSet) -> bool {
        (!self.contains_identity || s.contains(0))
            && (!self.connected || (!s.is_empty() && g.closure(g.product_set(s, g.inverse_set(s))) == g.all()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitRep {
    /// Lexicographically least member.
    pub set: ElemSet,
    pub orbit_size: u64,
    pub stabilizer_order: u128,
}

/// Orbit representatives for every size in a range, with the bookkeeping
/// needed for the orbit-counting check.
#[derive(Clone, Debug)]
pub struct SubsetOrbitIndex {
    pub group: String,
    pub sizes: RangeInclusive<usize>,
    pub constraints: SubsetConstraints,
    pub action: SubsetAction,
    pub acting_order: u128,
    /// Sorted by size, then lexicographically.
    pub reps: Vec<OrbitRep>,
    /// Number of admissible sets of the listed sizes.
    pub admissible: u64,
    labels: Vec<SizeLabels>,
}

#[derive(Clone, Debug)]
struct SizeLabels {
    size: usize,
    /// Orbit index (into `reps`) by colexicographic rank; `u32::MAX` for inadmissible sets.
    by_rank: Vec<u32>,
}

impl SubsetOrbitIndex {
    /// Index into `reps` of the orbit containing `s`, when it is admissible and of a listed size.
    pub fn orbit_of(&self, s: ElemSet) -> Option<usize> {
        let labels = self.labels.iter().find(|l| l.size == s.len())?;
        match labels.by_rank[colex_rank(s) as usize] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    pub fn reps_of_size(&self, k: usize) -> impl Iterator<Item = &OrbitRep> {
        self.reps.iter().filter(move |r| r.set.len() == k)
    }

    /// Orbit sizes sum to the admissible count and divide the acting group order.
    pub fn check_orbit_counting(&self) -> Result<()> {
        let total: u64 = self.reps.iter().map(|r| r.orbit_size).sum();
        if total != self.admissible {
            return Err(Error::Internal(format!(
                "orbit sizes sum to {total}, but {} sets are admissible",
                self.admissible
            )));
        }
        for r in &self.reps {
            if !self.acting_order.is_multiple_of(r.orbit_size as u128)
                || r.stabilizer_order * r.orbit_size as u128 != self.acting_order
            {
                return Err(Error::Internal(format!(
                    "orbit of size {} in a group of order {}",
                    r.orbit_size, self.acting_order
                )));
            }
        }
        Ok(())
    }
}

/// The acting group as permutations of the group elements.
pub fn acting_group(g: &FiniteGroup, action: SubsetAction) -> Result<PermGroup> {
    let n = g.order();
    let mut gens: Vec<Permutation> =
        g.automorphism_generators().iter().map(|a| Permutation::from_images(a.images())).collect::<Result<_>>()?;
    if action == SubsetAction::Kernel {
        for h in g.generating_sequence() {
            gens.push(Permutation::from_images(g.elements().map(|x| g.mul(h, x)).collect())?);
            gens.push(Permutation::from_images(g.elements().map(|x| g.mul(x, h)).collect())?);
        }
    }
    PermGroup::new(n, gens)
}

pub(crate) fn image_set(p: &Permutation, s: ElemSet) -> ElemSet {
    s.iter().map(|x| p.apply(x)).collect()
}

struct Binomials(Vec<Vec<u64>>);

impl Binomials {
    fn new(n: usize) -> Self {
        let mut t = vec![vec![0u64; n + 2]; n + 1];
        for a in 0..=n {
            t[a][0] = 1;
            for b in 1..=a {
                t[a][b] = t[a - 1][b - 1].saturating_add(if b < a { t[a - 1][b] } else { 0 });
            }
        }
        Binomials(t)
    }

    fn get(&self, a: usize, b: usize) -> u64 {
        if b > a {
            0
        } else {
            self.0[a][b]
        }
    }
}

/// Rank of `s` among sets of its size in colexicographic order.
pub(crate) fn colex_rank(s: ElemSet) -> u64 {
    thread_local! {
        static BINOM: Binomials = Binomials::new(64);
    }
    BINOM.with(|b| s.iter().enumerate().map(|(i, c)| b.get(c, i + 1)).sum())
}

/// Number of `k`-subsets of an `n`-set.
pub fn binomial(n: usize, k: usize) -> u64 {
    Binomials::new(n).get(n, k)
}

/// Next bit pattern with the same number of ones (Gosper's hack).
fn next_same_weight(x: u64) -> Option<u64> {
    let c = x & x.wrapping_neg();
    let r = x.checked_add(c)?;
    Some((((r ^ x) >> 2) / c) | r)
}

/// Orbits of the admissible sets with sizes in `sizes` under `action`.
///
/// Each size is handled by union-find over colexicographic ranks, joining
/// every set with its images under the generators of the acting group. The
/// constraints must be invariant under the action; a set whose image changes
/// admissibility is reported as malformed input.
pub fn k_orbits_on_subsets(
    g: &FiniteGroup,
    sizes: RangeInclusive<usize>,
    constraints: SubsetConstraints,
    action: SubsetAction,
    budgets: &Budgets,
) -> Result<SubsetOrbitIndex> {
    let n = g.order();
    if constraints.contains_identity && action == SubsetAction::Kernel {
        return Err(Error::MalformedInput("containing the identity is not preserved by the kernel action".into()));
    }
    let acting = acting_group(g, action)?;
    let acting_order = acting.order();
    let total: u64 = sizes.clone().filter(|&k| k <= n).map(|k| binomial(n, k)).sum();
    if total > budgets.census {
        return Err(exceeded("census connection sets", budgets.census));
    }
    let gens = acting.generators().to_vec();
    let mut reps = Vec::new();
    let mut labels = Vec::new();
    let mut admissible = 0u64;
    for k in sizes.clone().filter(|&k| k <= n) {
        let count = binomial(n, k) as usize;
        let mut parent: Vec<u32> = (0..count as u32).collect();
        let mut ok = vec![false; count];
        let mut sets = vec![ElemSet::EMPTY; count];
        fn root(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        let mut mask = if k == 0 { 0u64 } else { u64::MAX >> (64 - k) };
        for r in 0..count {
            let s = ElemSet(mask);
            debug_assert_eq!(colex_rank(s) as usize, r);
            sets[r] = s;
            ok[r] = constraints.admits(g, s);
            if k > 0 && r + 1 < count {
                mask = next_same_weight(mask).expect("more sets remain");
            }
        }
        for r in 0..count {
            let s = sets[r];
            for p in &gens {
                let t = image_set(p, s);
                let rt = colex_rank(t) as usize;
                if ok[rt] != ok[r] {
                    return Err(Error::MalformedInput("constraints are not invariant under the action".into()));
                }
                if ok[r] {
                    let (a, b) = (root(&mut parent, r as u32), root(&mut parent, rt as u32));
                    if a != b {
                        parent[a.max(b) as usize] = a.min(b);
                    }
                }
            }
        }
        // orbit sizes and lexicographically least members per root
        let mut size_of = vec![0u64; count];
        let mut best = vec![ElemSet::EMPTY; count];
        for r in 0..count {
            if !ok[r] {
                continue;
            }
            admissible += 1;
            let root_r = root(&mut parent, r as u32) as usize;
            if size_of[root_r] == 0 || sets[r].lex_cmp(best[root_r]) == Ordering::Less {
                best[root_r] = sets[r];
            }
            size_of[root_r] += 1;
        }
        let mut size_reps: Vec<(ElemSet, usize)> =
            (0..count).filter(|&r| size_of[r] > 0).map(|r| (best[r], r)).collect();
        size_reps.sort_by(|a, b| a.0.lex_cmp(b.0));
        let mut slot_of_root = vec![u32::MAX; count];
        for (set, root_r) in &size_reps {
            slot_of_root[*root_r] = reps.len() as u32;
            let orbit_size = size_of[*root_r];
            reps.push(OrbitRep { set: *set, orbit_size, stabilizer_order: acting_order / orbit_size as u128 });
        }
        let by_rank = (0..count)
            .map(|r| if ok[r] { slot_of_root[root(&mut parent, r as u32) as usize] } else { u32::MAX })
            .collect();
        labels.push(SizeLabels { size: k, by_rank });
    }
    let index = SubsetOrbitIndex {
        group: g.name().to_string(),
        sizes,
        constraints,
        action,
        acting_order,
        reps,
        admissible,
        labels,
    };
    index.check_orbit_counting()?;
    Ok(index)
}

/// Orbit representatives found by checking, for every admissible set, whether
/// it is the lexicographically least member of its orbit; stabilizers are
/// counted directly. Used when union-find tables would be too large and as an
/// independent route in tests.
pub fn orbit_reps_by_minimization(
    g: &FiniteGroup,
    k: usize,
    constraints: SubsetConstraints,
    action: SubsetAction,
    work_budget: u64,
) -> Result<Vec<OrbitRep>> {
    let n = g.order();
    let acting = acting_group(g, action)?;
    let order = acting.order();
    let work = (binomial(n, k) as u128).saturating_mul(order);
    if work > work_budget as u128 {
        return Err(exceeded("orbit minimization work", work_budget));
    }
    let elems = acting.enumerate_elements(order)?;
    let mut out = Vec::new();
    if k > n {
        return Ok(out);
    }
    let mut mask = if k == 0 { 0u64 } else { u64::MAX >> (64 - k) };
    for r in 0..binomial(n, k) {
        let s = ElemSet(mask);
        if constraints.admits(g, s) {
            let mut least = true;
            let mut stab = 0u128;
            for p in &elems {
                let t = image_set(p, s);
                match t.lex_cmp(s) {
                    Ordering::Less => {
                        least = false;
                        break;
                    }
                    Ordering::Equal => stab += 1,
                    Ordering::Greater => {}
                }
            }
            if least {
                out.push(OrbitRep { set: s, orbit_size: (order / stab) as u64, stabilizer_order: stab });
            }
        }
        if k > 0 && r + 1 < binomial(n, k) {
            mask = next_same_weight(mask).expect("more sets remain");
        }
    }
    out.sort_by(|a, b| a.set.lex_cmp(b.set));
    Ok(out)
}
