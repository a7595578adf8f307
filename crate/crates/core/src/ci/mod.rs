//! Decision procedures for kernel Cayley-isomorphism properties.
//!
//! The m-Cayley criteria combine two ingredients: whether `N_{Aut(Γ)}(R(G))`
//! induces the full symmetric group on the parts, and whether every
//! semiregular copy of `G` in `Aut(Γ)` is conjugate to `R(G)`. The bi-Cayley
//! tests compare all connection sets of the same size up to the kernel action.

mod normalizer;
mod pci;
mod semiregular;

pub use normalizer::{normalizer_in_aut, NormalizerInAut};
pub use pci::{
    bci_condition3, in_transform_family, is_vertex_transitive, k2pci_graph_test, k2pci_graph_test_direct,
    two_pci_graph_test, two_pci_graph_test_direct, SetClassifier,
};
pub use semiregular::{semiregular_subgroups, SemiregularClass, SemiregularSubgroups};

pub(crate) use pci::bcay_canonical;

use serde::Serialize;

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::group::group_isomorphic;
use crate::group::FiniteGroup;
use crate::iso::{automorphisms, ColorMode, ColoredDigraph};
use crate::mcayley::{right_regular, MCayleyDigraph};
use crate::perm::{conjugating_element, PermGroup};

/// Evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A semiregular subgroup isomorphic to `G` that is not conjugate to `R(G)`.
    NonConjugateSubgroup { generators: Vec<String>, classes: usize },
    /// The part permutations induced by `N_{Aut(Γ)}(R(G))`.
    PartAction { induced: Vec<Vec<usize>>, parts: usize },
    /// A connection set `T` with `BCay(G, T) ≅ BCay(G, S)` outside the allowed family,
    /// with an isomorphism as a vertex image list.
    FailingSet { set: String, isomorphism: Vec<usize> },
    /// `S^α = S⁻¹ g`.
    Transform { alpha: Vec<usize>, element: String },
    /// Two connection sets with isomorphic graphs in different kernel orbits.
    ViolatingPair { s: String, t: String },
    /// The orbit of vertex 0 under `Aut(Γ)`.
    VertexOrbit { size: usize, vertices: usize },
}

/// Outcome of one decision procedure.
#[derive(Clone, Debug, Serialize)]
pub struct CiVerdict {
    pub property: String,
    pub group: String,
    pub set: String,
    pub result: bool,
    pub certificate: Option<Certificate>,
    pub budget_used: u64,
}

impl CiVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Connection symbol in the `S i j : labels` form, joined by `; `.
pub(crate) fn describe_symbol(d: &MCayleyDigraph) -> String {
    let g = d.group();
    let m = d.parts();
    if m == 2 && d.symbol().get(0, 0).is_empty() && d.symbol().get(1, 1).is_empty() && d.symbol().is_undirected(g) {
        return g.format_set(d.symbol().get(0, 1));
    }
    let mut parts = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let s = d.symbol().get(i, j);
            if !s.is_empty() {
                parts.push(format!("S{}{}={{{}}}", i + 1, j + 1, g.format_set(s)));
            }
        }
    }
    parts.join("; ")
}

/// KmCI criterion: `N_{Aut(Γ)}(R(G))` induces `S_m` on the parts and every
/// semiregular subgroup of `Aut(Γ)` isomorphic to `G` is conjugate to `R(G)`.
pub fn kmci_test(d: &MCayleyDigraph, budgets: &Budgets) -> Result<CiVerdict> {
    criterion(d, false, budgets)
}

/// KmPCI criterion: as [`kmci_test`], restricted to semiregular subgroups whose
/// orbits are exactly the parts. The digraph must be m-partite.
pub fn kmpci_test(d: &MCayleyDigraph, budgets: &Budgets) -> Result<CiVerdict> {
    if !d.symbol().is_partite() {
        return Err(Error::MalformedInput("KmPCI needs empty diagonal connection sets".into()));
    }
    criterion(d, true, budgets)
}

fn criterion(d: &MCayleyDigraph, same_orbit_set: bool, budgets: &Budgets) -> Result<CiVerdict> {
    let property = if same_orbit_set { "KmPCI" } else { "KmCI" };
    let nai = normalizer_in_aut(d, budgets)?;
    let mut verdict = CiVerdict {
        property: property.into(),
        group: d.group().name().into(),
        set: describe_symbol(d),
        result: false,
        certificate: None,
        budget_used: nai.checks(),
    };
    if !nai.induces_symmetric_group() {
        verdict.certificate =
            Some(Certificate::PartAction { induced: nai.induced_part_permutations().to_vec(), parts: d.parts() });
        return Ok(verdict);
    }
    let found = semiregular_subgroups(d, same_orbit_set, budgets)?;
    verdict.budget_used += found.nodes;
    match found.non_conjugate_witness() {
        None => verdict.result = true,
        Some(w) => {
            validate_witness(d, &w.representative, same_orbit_set)?;
            verdict.certificate = Some(Certificate::NonConjugateSubgroup {
                generators: w.representative.generators().iter().map(|p| p.to_cycle_string()).collect(),
                classes: found.classes.len(),
            });
        }
    }
    Ok(verdict)
}

/// Re-checks a witness on its own: it lies in `Aut(Γ)`, is isomorphic to `G`,
/// is semiregular with the right orbits, and the conjugacy search in the
/// uncolored automorphism group finds no element taking `R(G)` to it.
pub(crate) fn validate_witness(d: &MCayleyDigraph, h: &PermGroup, same_orbit_set: bool) -> Result<()> {
    let g = d.group();
    let a = automorphisms(&ColoredDigraph::uncolored(d.adjacency().clone()), ColorMode::Fixed)?;
    let fail = |why: &str| Err(Error::Internal(format!("non-conjugacy witness rejected: {why}")));
    if !a.contains_group(h) {
        return fail("not inside Aut");
    }
    let (semi, orbit_count) = h.is_semiregular();
    if !semi || orbit_count != d.parts() || h.order() != g.order() as u128 {
        return fail("not semiregular with m orbits");
    }
    if same_orbit_set {
        let n = g.order();
        let parts: Vec<Vec<usize>> = (0..d.parts()).map(|i| (i * n..(i + 1) * n).collect()).collect();
        if h.orbits() != parts {
            return fail("orbits differ from the parts");
        }
    }
    let abstract_h = FiniteGroup::from_permutations("H", d.vertex_count(), h.generators())?;
    if group_isomorphic(g, &abstract_h).is_none() {
        return fail("not isomorphic to G");
    }
    if conjugating_element(&a, &right_regular(g, d.parts()), h)?.is_some() {
        return fail("conjugate to R(G)");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::{named_group, ElemSet};
    use crate::mcayley::{build_bcay, build_mcayley, ConnectionSymbol};

    fn grp(spec: &str) -> Arc<FiniteGroup> {
        Arc::new(named_group(spec).unwrap())
    }

    #[test]
    fn trivial_group_two_parts() {
        let g = grp("Z1");
        let b = Budgets::default();
        let empty = build_mcayley(&g, &ConnectionSymbol::empty(2)).unwrap();
        assert!(kmci_test(&empty, &b).unwrap().result);
        let edge = build_bcay(&g, ElemSet::singleton(0)).unwrap();
        assert!(kmci_test(&edge, &b).unwrap().result);
    }

    #[test]
    fn trivial_group_three_parts_edge() {
        let g = grp("Z1");
        let mut sym = ConnectionSymbol::empty(3);
        sym.set(0, 1, ElemSet::singleton(0));
        sym.set(1, 0, ElemSet::singleton(0));
        let d = build_mcayley(&g, &sym).unwrap();
        let a = automorphisms(&ColoredDigraph::uncolored(d.adjacency().clone()), ColorMode::Fixed).unwrap();
        assert_eq!(a.order(), 2);
        let v = kmci_test(&d, &Budgets::default()).unwrap();
        assert!(!v.result);
        assert!(matches!(v.certificate, Some(Certificate::PartAction { .. })));
    }

    #[test]
    fn triangle_example_fails() {
        let g = grp("Z3");
        let mut sym = ConnectionSymbol::empty(2);
        sym.set(0, 0, ElemSet::from_elems([1, 2]));
        let v = kmci_test(&build_mcayley(&g, &sym).unwrap(), &Budgets::default()).unwrap();
        assert!(!v.result);
    }

    #[test]
    fn matching_plus_isolated_part_fails_kmpci() {
        for spec in ["Z2", "Z3"] {
            let g = grp(spec);
            let mut sym = ConnectionSymbol::empty(3);
            sym.set(0, 1, ElemSet::singleton(0));
            sym.set(1, 0, ElemSet::singleton(0));
            let v = kmpci_test(&build_mcayley(&g, &sym).unwrap(), &Budgets::default()).unwrap();
            assert!(!v.result, "{spec}");
        }
    }

    #[test]
    fn complete_bipartite_is_kmpci() {
        for spec in ["Z2", "Z3"] {
            let g = grp(spec);
            let v = kmpci_test(&build_bcay(&g, g.all()).unwrap(), &Budgets::default()).unwrap();
            assert!(v.result, "{spec}");
            assert!(v.certificate.is_none());
        }
    }

    #[test]
    fn cyclic_witness_is_certified() {
        let g = grp("Z8");
        let d = build_bcay(&g, ElemSet::from_elems([0, 1, 2, 5])).unwrap();
        let v = kmpci_test(&d, &Budgets::default()).unwrap();
        assert!(!v.result);
        assert!(matches!(v.certificate, Some(Certificate::NonConjugateSubgroup { classes, .. }) if classes >= 2));
        let json = v.to_json();
        assert_eq!(json["property"], "KmPCI");
        assert_eq!(json["result"], false);
    }

    #[test]
    fn kmpci_rejects_loops_on_parts() {
        let g = grp("Z3");
        let mut sym = ConnectionSymbol::empty(2);
        sym.set(0, 0, ElemSet::from_elems([1, 2]));
        assert!(kmpci_test(&build_mcayley(&g, &sym).unwrap(), &Budgets::default()).is_err());
    }
}
