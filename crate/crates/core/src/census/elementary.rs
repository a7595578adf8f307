//! Connected bi-Cayley graphs of `Z2^4` with the identity in the connection
//! set and 6 to 8 elements.
//!
//! Every such set is sent by an automorphism to `{1, a, b, c, d} ∪ T'` where
//! `T'` is one of twelve short lists. Two routes confirm the list: the
//! union-find orbit index under `Aut(G)`, and a basis reduction of every
//! admissible set followed by a scan of all automorphisms.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::classify::iso_class_partition;
use super::orbits::{k_orbits_on_subsets, SubsetAction, SubsetConstraints};
use crate::budget::Budgets;
use crate::ci::{semiregular_subgroups, SetClassifier};
use crate::error::{Error, Result};
use crate::group::{named_group, ElemSet, FiniteGroup};
use crate::mcayley::build_bcay;

/// The twelve extra parts, as words in `a, b, c, d`.
pub const EXTRA_PARTS: [&str; 12] = [
    "ab",
    "abc",
    "abcd",
    "ab, ac",
    "ab, bcd",
    "ab, cd",
    "abc, abd",
    "ab, ac, ad",
    "ab, ac, bc",
    "ab, ac, bd",
    "ab, ac, bcd",
    "abc, abd, acd",
];

#[derive(Clone, Debug, Serialize)]
pub struct ExtraPartCase {
    pub extra: String,
    pub set: String,
    /// Index of its orbit in the `Aut(G)` orbit list.
    pub orbit: usize,
    /// Semiregular subgroup classes with the parts as orbits.
    pub same_orbit_classes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementaryFourReport {
    /// Orbits of `Aut(G)` on admissible sets, from the orbit index.
    pub orbit_count: usize,
    /// Admissible sets.
    pub admissible: u64,
    /// Distinct reduced forms `{1, a, b, c, d} ∪ X` met while reducing every admissible set.
    pub reduced_forms: usize,
    /// Sets `{1, a, b, c, d} ∪ X` with one to three extra elements.
    pub supersets: usize,
    /// Every admissible set reduces to such a superset, and every superset is
    /// equivalent to exactly one listed case.
    pub reduction_covers: bool,
    /// The listed cases lie in pairwise different orbits.
    pub cases_distinct: bool,
    /// Isomorphism classes of the twelve graphs, as indices into `cases`.
    pub iso_classes: Vec<Vec<usize>>,
    /// The twelve cases grouped by kernel orbit. Sets containing the identity
    /// that differ by a translation share a kernel orbit but not an `Aut(G)`
    /// orbit, so this is coarser than the twelve.
    pub kernel_orbits: Vec<Vec<usize>>,
    pub cases: Vec<ExtraPartCase>,
}

impl ElementaryFourReport {
    pub fn passed(&self) -> bool {
        self.orbit_count == EXTRA_PARTS.len()
            && self.reduction_covers
            && self.cases_distinct
            && self.iso_classes == self.kernel_orbits
            && self.cases.iter().all(|c| c.same_orbit_classes == 1)
    }
}

/// `α` sending the independent elements `from` to `to`, as an image table.
fn basis_map(g: &FiniteGroup, from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut images = vec![usize::MAX; g.order()];
    for mask in 0usize..(1 << from.len()) {
        let (mut x, mut y) = (0, 0);
        for i in (0..from.len()).filter(|i| mask >> i & 1 == 1) {
            x = g.mul(x, from[i]);
            y = g.mul(y, to[i]);
        }
        images[x] = y;
    }
    images
}

/// Greedily picks elements of `s` that each enlarge the generated subgroup.
fn independent_subset(g: &FiniteGroup, s: ElemSet) -> Vec<usize> {
    let mut picked = Vec::new();
    let mut span = ElemSet::singleton(0);
    for x in s.iter() {
        if !span.contains(x) {
            picked.push(x);
            span = g.closure(span.with(x));
        }
    }
    picked
}

/// Runs both routes and the per-case checks.
pub fn elementary_four_census(budgets: &Budgets) -> Result<ElementaryFourReport> {
    let g = Arc::new(named_group("Z2^4")?);
    let basis: Vec<usize> = ["a", "b", "c", "d"].iter().map(|w| g.parse_element(w)).collect::<Result<_>>()?;
    let base = ElemSet::from_elems(basis.iter().copied()).with(0);
    let constraints = SubsetConstraints { contains_identity: true, connected: true };

    let index = k_orbits_on_subsets(&g, 6..=8, constraints, SubsetAction::Automorphisms, budgets)?;

    let case_sets: Vec<ElemSet> = EXTRA_PARTS.iter().map(|t| Ok(base.union(g.parse_set(t)?))).collect::<Result<_>>()?;

    // route two: reduce every admissible set to {1,a,b,c,d} ∪ X
    let mut reduced: BTreeSet<u64> = BTreeSet::new();
    for k in 6..=8 {
        for s in ElemSet::subsets(g.order(), k) {
            if !constraints.admits(&g, s) {
                continue;
            }
            let picked = independent_subset(&g, s.without(0));
            if picked.len() != 4 {
                return Err(Error::Internal("a generating set of Z2^4 without four independent elements".into()));
            }
            let alpha = basis_map(&g, &picked, &basis);
            let image: ElemSet = s.iter().map(|x| alpha[x]).collect();
            debug_assert!(base.is_subset(image));
            reduced.insert(image.0);
        }
    }
    // every superset of {1,a,b,c,d} in range, reduced forms included, matches exactly one case
    let autos = g.automorphisms()?;
    let equivalent = |x: ElemSet, y: ElemSet| x.len() == y.len() && autos.iter().any(|a| a.map_set(x) == y);
    let rest = g.all().difference(base).to_vec();
    let mut reduction_covers = true;
    let mut superset_count = 0;
    for extra in 1..=3 {
        for pick in ElemSet::subsets(rest.len(), extra) {
            let t = base.union(pick.iter().map(|i| rest[i]).collect());
            superset_count += 1;
            let matches = case_sets.iter().filter(|&&c| equivalent(t, c)).count();
            reduction_covers &= matches == 1;
        }
    }
    reduction_covers &= reduced.iter().all(|&bits| base.is_subset(ElemSet(bits)));
    let mut orbit_ids: Vec<usize> = Vec::new();
    for &c in &case_sets {
        orbit_ids.push(index.orbit_of(c).ok_or_else(|| Error::Internal("listed case is not admissible".into()))?);
    }
    let mut sorted = orbit_ids.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let cases_distinct = sorted.len() == case_sets.len();

    let iso_classes = iso_class_partition(&g, &case_sets, budgets)?;
    let mut kernel_orbits: Vec<Vec<usize>> = Vec::new();
    let mut seen: Vec<(usize, usize)> = Vec::new();
    let classifiers: Vec<SetClassifier> = (6..=8).map(|k| SetClassifier::new(&g, k, budgets)).collect::<Result<_>>()?;
    for (i, &c) in case_sets.iter().enumerate() {
        let key = (c.len(), classifiers[c.len() - 6].orbit_of(c)?);
        match seen.iter().position(|&k| k == key) {
            Some(j) => kernel_orbits[j].push(i),
            None => {
                seen.push(key);
                kernel_orbits.push(vec![i]);
            }
        }
    }
    let mut cases = Vec::new();
    for ((extra, &set), &orbit) in EXTRA_PARTS.iter().zip(&case_sets).zip(&orbit_ids) {
        let d = build_bcay(&g, set)?;
        let same_orbit_classes = semiregular_subgroups(&d, true, budgets)?.classes.len();
        cases.push(ExtraPartCase { extra: extra.to_string(), set: g.format_set(set), orbit, same_orbit_classes });
    }
    Ok(ElementaryFourReport {
        orbit_count: index.reps.len(),
        admissible: index.admissible,
        reduced_forms: reduced.len(),
        supersets: superset_count,
        reduction_covers,
        cases_distinct,
        iso_classes,
        kernel_orbits,
        cases,
    })
}
