use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::budget::{exceeded, Budgets};
use crate::census::{binomial, k_orbits_on_subsets, SubsetAction, SubsetConstraints, SubsetOrbitIndex};
use crate::error::{Error, Result};
use crate::group::{ElemSet, FiniteGroup, GroupMap};
use crate::iso::{automorphisms, canonical_with_budget, find_isomorphism, ColorMode, ColoredDigraph};
use crate::mcayley::{build_bcay, MCayleyDigraph};

use super::{Certificate, CiVerdict};

/// Canonical form of `BCay(G, S)` with the two parts allowed to swap.
pub(crate) fn bcay_canonical(g: &Arc<FiniteGroup>, s: ElemSet, budgets: &Budgets) -> Result<Vec<u8>> {
    let d = build_bcay(g, s)?;
    Ok(canonical_with_budget(&ColoredDigraph::from_mcayley(&d), ColorMode::Permutable, budgets.canon_nodes)?.bytes)
}

/// Kernel orbits of the `k`-subsets of `G` together with the isomorphism
/// class of the bi-Cayley graph of each orbit.
#[derive(Clone, Debug)]
pub struct SetClassifier {
    group: Arc<FiniteGroup>,
    size: usize,
    index: SubsetOrbitIndex,
    canon: Vec<Vec<u8>>,
    class_of_rep: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl SetClassifier {
    pub fn new(g: &Arc<FiniteGroup>, size: usize, budgets: &Budgets) -> Result<Self> {
        if size > g.order() {
            return Err(Error::MalformedInput(format!("no {size}-subsets in a group of order {}", g.order())));
        }
        let index = k_orbits_on_subsets(g, size..=size, SubsetConstraints::default(), SubsetAction::Kernel, budgets)?;
        let canon = index.reps.iter().map(|r| bcay_canonical(g, r.set, budgets)).collect::<Result<Vec<_>>>()?;
        let mut first_with: HashMap<&[u8], usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of_rep = Vec::with_capacity(canon.len());
        for (i, c) in canon.iter().enumerate() {
            let cls = *first_with.entry(c.as_slice()).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[cls].push(i);
            class_of_rep.push(cls);
        }
        Ok(SetClassifier { group: g.clone(), size, index, canon, class_of_rep, classes })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index(&self) -> &SubsetOrbitIndex {
        &self.index
    }

    /// Canonical bytes of the graph of the `i`-th orbit representative.
    pub fn canonical_of(&self, orbit: usize) -> &[u8] {
        &self.canon[orbit]
    }

    /// Orbit indices grouped by isomorphism class, in order of first orbit.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn orbit_of(&self, s: ElemSet) -> Result<usize> {
        self.index.orbit_of(s).ok_or_else(|| Error::MalformedInput(format!("set of size {} is not indexed", s.len())))
    }

    /// The isomorphism class containing `s`, as orbit indices.
    pub fn class_of(&self, s: ElemSet) -> Result<&[usize]> {
        Ok(&self.classes[self.class_of_rep[self.orbit_of(s)?]])
    }
}

/// `(α, g)` with `S^α = S⁻¹ g`, if any.
///
/// On abelian groups the inversion map with the identity always works. Otherwise
/// the right translates of `S⁻¹` are hashed and every automorphism is tried in
/// the order [`FiniteGroup::automorphisms`] lists them.
pub fn bci_condition3(g: &FiniteGroup, s: ElemSet) -> Result<Option<(GroupMap, usize)>> {
    if g.is_abelian() {
        return Ok(Some((g.inversion_map(), g.identity())));
    }
    let inv = g.inverse_set(s);
    let mut translates: HashMap<ElemSet, usize> = HashMap::new();
    for x in g.elements() {
        translates.entry(g.right_translate(inv, x)).or_insert(x);
    }
    for alpha in g.automorphisms()?.iter() {
        if let Some(&x) = translates.get(&alpha.map_set(s)) {
            return Ok(Some((alpha.clone(), x)));
        }
    }
    Ok(None)
}

/// Whether `Aut(Γ)` moves vertex 0 to every vertex.
pub fn is_vertex_transitive(d: &MCayleyDigraph) -> Result<bool> {
    let a = automorphisms(&ColoredDigraph::uncolored(d.adjacency().clone()), ColorMode::Fixed)?;
    Ok(a.orbit_of(0).len() == d.vertex_count())
}

/// Everything of the form `S^α g`, for testing `T = h⁻¹ S^α g` by left translates of `T`.
struct TransformFamily {
    right_images: HashSet<ElemSet>,
}

impl TransformFamily {
    fn new(g: &FiniteGroup, sets: &[ElemSet]) -> Result<Self> {
        let mut right_images = HashSet::new();
        for alpha in g.automorphisms()?.iter() {
            for &s in sets {
                let img = alpha.map_set(s);
                for x in g.elements() {
                    right_images.insert(g.right_translate(img, x));
                }
            }
        }
        Ok(TransformFamily { right_images })
    }

    fn contains(&self, g: &FiniteGroup, t: ElemSet) -> bool {
        g.elements().any(|h| self.right_images.contains(&g.left_translate(h, t)))
    }
}

fn family_sets(g: &FiniteGroup, s: ElemSet, with_inverse: bool) -> Vec<ElemSet> {
    if with_inverse {
        vec![s, g.inverse_set(s)]
    } else {
        vec![s]
    }
}

/// Whether `T` is `(h⁻¹ S g)^α` (or, with `with_inverse`, also `(h⁻¹ S⁻¹ g)^α`)
/// for some `h, g ∈ G` and `α ∈ Aut(G)`, checked by direct enumeration.
pub fn in_transform_family(g: &FiniteGroup, s: ElemSet, t: ElemSet, with_inverse: bool) -> Result<bool> {
    Ok(TransformFamily::new(g, &family_sets(g, s, with_inverse))?.contains(g, t))
}

fn verdict(property: &str, g: &FiniteGroup, s: ElemSet) -> CiVerdict {
    CiVerdict {
        property: property.into(),
        group: g.name().into(),
        set: g.format_set(s),
        result: true,
        certificate: None,
        budget_used: 0,
    }
}

fn failing_set_certificate(g: &Arc<FiniteGroup>, s: ElemSet, t: ElemSet) -> Result<Certificate> {
    let from = ColoredDigraph::from_mcayley(&build_bcay(g, s)?);
    let to = ColoredDigraph::from_mcayley(&build_bcay(g, t)?);
    let iso = find_isomorphism(&from, &to, ColorMode::Permutable)?
        .ok_or_else(|| Error::Internal("equal canonical forms without an isomorphism".into()))?;
    Ok(Certificate::FailingSet { set: g.format_set(t), isomorphism: iso.images().collect() })
}

fn graph_test_by_orbits(
    property: &str,
    g: &Arc<FiniteGroup>,
    s: ElemSet,
    with_inverse: bool,
    budgets: &Budgets,
) -> Result<CiVerdict> {
    let cls = SetClassifier::new(g, s.len(), budgets)?;
    let mut allowed = vec![cls.orbit_of(s)?];
    if with_inverse {
        allowed.push(cls.orbit_of(g.inverse_set(s))?);
    }
    let mut v = verdict(property, g, s);
    v.budget_used = cls.index().admissible;
    let class = cls.class_of(s)?;
    // orbit representatives are the least members, so the first listed
    // failing orbit also holds the least failing set
    if let Some(&bad) = class.iter().find(|o| !allowed.contains(o)) {
        v.result = false;
        v.certificate = Some(failing_set_certificate(g, s, cls.index().reps[bad].set)?);
    }
    Ok(v)
}

fn graph_test_direct(
    property: &str,
    g: &Arc<FiniteGroup>,
    s: ElemSet,
    with_inverse: bool,
    budgets: &Budgets,
) -> Result<CiVerdict> {
    let n = g.order();
    let k = s.len();
    let total = binomial(n, k);
    if total > budgets.census {
        return Err(exceeded("connection sets of equal size", budgets.census));
    }
    let target = bcay_canonical(g, s, budgets)?;
    let family = TransformFamily::new(g, &family_sets(g, s, with_inverse))?;
    let mut first_bad: Option<ElemSet> = None;
    for t in ElemSet::subsets(n, k) {
        if first_bad.is_some_and(|b| t.lex_cmp(b) != Ordering::Less) {
            continue;
        }
        if bcay_canonical(g, t, budgets)? == target && !family.contains(g, t) {
            first_bad = Some(t);
        }
    }
    let mut v = verdict(property, g, s);
    v.budget_used = total;
    if let Some(t) = first_bad {
        v.result = false;
        v.certificate = Some(failing_set_certificate(g, s, t)?);
    }
    Ok(v)
}

/// 2PCI test: every `T` with `BCay(G, T) ≅ BCay(G, S)` is `(h⁻¹ S g)^α` or
/// `(h⁻¹ S⁻¹ g)^α`. Runs over the kernel orbits of `|S|`-subsets.
pub fn two_pci_graph_test(g: &Arc<FiniteGroup>, s: ElemSet, budgets: &Budgets) -> Result<CiVerdict> {
    graph_test_by_orbits("2PCI", g, s, true, budgets)
}

/// K2PCI test: every `T` with `BCay(G, T) ≅ BCay(G, S)` is `(h⁻¹ S g)^α`.
pub fn k2pci_graph_test(g: &Arc<FiniteGroup>, s: ElemSet, budgets: &Budgets) -> Result<CiVerdict> {
    graph_test_by_orbits("K2PCI", g, s, false, budgets)
}

/// [`two_pci_graph_test`] by canonical forms of every `T` and direct family membership.
pub fn two_pci_graph_test_direct(g: &Arc<FiniteGroup>, s: ElemSet, budgets: &Budgets) -> Result<CiVerdict> {
    graph_test_direct("2PCI", g, s, true, budgets)
}

/// [`k2pci_graph_test`] by canonical forms of every `T` and direct family membership.
pub fn k2pci_graph_test_direct(g: &Arc<FiniteGroup>, s: ElemSet, budgets: &Budgets) -> Result<CiVerdict> {
    graph_test_direct("K2PCI", g, s, false, budgets)
}
