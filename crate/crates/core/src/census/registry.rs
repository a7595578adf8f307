//! Shipped counterexample and witness cases with their expected outcomes.
//!
//! Each case lives in `data/registry/*.json` with this layout:
//!
//! ```json
//! {
//!   "id": "Z8-not-2PCI",
//!   "group": "Z8",
//!   "set": "1_K, x, x^2, x^5",
//!   "checks": [{ "kind": "regular_normal", "expected": true }],
//!   "quotes": ["..."]
//! }
//! ```
//!
//! `quotes` holds the source statements verbatim. Check kinds:
//!
//! - `non_conjugate_same_orbits`: `Aut(BCay(G, S))` has a semiregular subgroup
//!   isomorphic to `G` with the parts as orbits that is not conjugate to `R(G)`.
//! - `regular_normal`: `R(G)` is normal in `Aut(BCay(G, S))`.
//! - `not_2pci_graph`, `not_k2pci_graph`: the graph test fails.
//! - `not_vertex_transitive`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budgets;
use crate::ci::{
    in_transform_family, is_vertex_transitive, k2pci_graph_test, semiregular_subgroups, two_pci_graph_test,
    validate_witness, Certificate, CiVerdict,
};
use crate::error::{Error, Result};
use crate::group::{named_group, ElemSet, FiniteGroup};
use crate::iso::{automorphisms, ColorMode, ColoredDigraph};
use crate::mcayley::{build_bcay, right_regular, MCayleyDigraph};
use crate::perm::Permutation;

const FILES: [&str; 8] = [
    include_str!("../../data/registry/A5-not-2PCI.json"),
    include_str!("../../data/registry/F8-not-2PCI.json"),
    include_str!("../../data/registry/Z8-not-2PCI.json"),
    include_str!("../../data/registry/Z27-not-2PCI.json"),
    include_str!("../../data/registry/Z3_3-not-K2PCI.json"),
    include_str!("../../data/registry/A4-not-vertex-transitive.json"),
    include_str!("../../data/registry/Dic12-not-vertex-transitive.json"),
    include_str!("../../data/registry/G18-not-vertex-transitive.json"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    NonConjugateSameOrbits,
    RegularNormal,
    #[serde(rename = "not_2pci_graph")]
    Not2pciGraph,
    NotK2pciGraph,
    NotVertexTransitive,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegistryCheck {
    pub kind: CheckKind,
    pub expected: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegistryCase {
    pub id: String,
    pub group: String,
    pub set: String,
    pub checks: Vec<RegistryCheck>,
    pub quotes: Vec<String>,
}

impl RegistryCase {
    /// How the case text is read when it is ambiguous.
    pub fn reading(&self) -> Option<&'static str> {
        (self.id == "F8-not-2PCI").then_some(
            "the set is written over K and the conclusion names R(K), but only M is defined; all three are read as M",
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub kind: CheckKind,
    pub expected: bool,
    pub observed: bool,
    pub detail: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegistryReport {
    pub id: String,
    pub group: String,
    pub set: String,
    pub reading: Option<&'static str>,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

/// All shipped cases in a fixed order.
pub fn registry_cases() -> Result<Vec<RegistryCase>> {
    FILES.iter().map(|text| Ok(serde_json::from_str(text)?)).collect()
}

pub fn registry_case(id: &str) -> Result<RegistryCase> {
    registry_cases()?.into_iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCase(id.to_string()))
}

/// Runs every declared check of the case `id`.
pub fn verify_registry_case(id: &str, budgets: &Budgets) -> Result<RegistryReport> {
    run_case(&registry_case(id)?, budgets)
}

pub fn run_case(case: &RegistryCase, budgets: &Budgets) -> Result<RegistryReport> {
    let g = Arc::new(named_group(&case.group)?);
    let s = g.parse_set(&case.set)?;
    let d = build_bcay(&g, s)?;
    let mut checks = Vec::new();
    for check in &case.checks {
        let (observed, detail) = match check.kind {
            CheckKind::NonConjugateSameOrbits => non_conjugate_same_orbits(&d, budgets)?,
            CheckKind::RegularNormal => regular_normal(&d)?,
            CheckKind::Not2pciGraph => failing_graph_test(&g, s, two_pci_graph_test(&g, s, budgets)?, true)?,
            CheckKind::NotK2pciGraph => failing_graph_test(&g, s, k2pci_graph_test(&g, s, budgets)?, false)?,
            CheckKind::NotVertexTransitive => {
                let vt = is_vertex_transitive(&d)?;
                (!vt, serde_json::json!({ "vertex_transitive": vt }))
            }
        };
        checks.push(CheckOutcome { kind: check.kind, expected: check.expected, observed, detail });
    }
    let passed = checks.iter().all(|c| c.expected == c.observed);
    Ok(RegistryReport {
        id: case.id.clone(),
        group: g.name().to_string(),
        set: g.format_set(s),
        reading: case.reading(),
        checks,
        passed,
    })
}

fn non_conjugate_same_orbits(d: &MCayleyDigraph, budgets: &Budgets) -> Result<(bool, serde_json::Value)> {
    let found = semiregular_subgroups(d, true, budgets)?;
    let sizes: Vec<usize> = found.classes.iter().map(|c| c.subgroups).collect();
    let Some(w) = found.non_conjugate_witness() else {
        return Ok((false, serde_json::json!({ "classes": sizes.len(), "class_sizes": sizes })));
    };
    validate_witness(d, &w.representative, true)?;
    let gens: Vec<String> = w.representative.generators().iter().map(Permutation::to_cycle_string).collect();
    Ok((true, serde_json::json!({ "classes": sizes.len(), "class_sizes": sizes, "witness_generators": gens })))
}

fn regular_normal(d: &MCayleyDigraph) -> Result<(bool, serde_json::Value)> {
    let a = automorphisms(&ColoredDigraph::uncolored(d.adjacency().clone()), ColorMode::Fixed)?;
    let r = right_regular(d.group(), d.parts());
    let normal = a.generators().iter().all(|x| r.generators().iter().all(|h| r.contains(&h.conjugate_by(x))));
    Ok((normal, serde_json::json!({ "aut_order": a.order().to_string() })))
}

/// A negative graph verdict, re-checked: the certificate set is outside the
/// allowed family and the isomorphism carries one graph to the other.
fn failing_graph_test(
    g: &Arc<FiniteGroup>,
    s: ElemSet,
    v: CiVerdict,
    with_inverse: bool,
) -> Result<(bool, serde_json::Value)> {
    if v.result {
        return Ok((false, v.to_json()));
    }
    let Some(Certificate::FailingSet { set, isomorphism }) = &v.certificate else {
        return Err(Error::Internal("negative graph verdict without a failing set".into()));
    };
    let t = g.parse_set(set)?;
    let p = Permutation::from_images(isomorphism.clone())?;
    let from = ColoredDigraph::from_mcayley(&build_bcay(g, s)?);
    let to = ColoredDigraph::from_mcayley(&build_bcay(g, t)?);
    if in_transform_family(g, s, t, with_inverse)? || !from.is_isomorphism_to(&to, &p, ColorMode::Permutable) {
        return Err(Error::Internal("failing-set certificate does not check out".into()));
    }
    Ok((true, v.to_json()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases_parse_and_sets_exist() {
        let cases = registry_cases().unwrap();
        assert_eq!(cases.len(), 8);
        for c in &cases {
            let g = named_group(&c.group).unwrap();
            assert!(!g.parse_set(&c.set).unwrap().is_empty(), "{}", c.id);
            assert!(!c.quotes.is_empty());
            assert!(c.checks.iter().all(|k| k.expected));
        }
        let sizes: Vec<(String, usize)> = cases
            .iter()
            .map(|c| (c.id.clone(), named_group(&c.group).unwrap().parse_set(&c.set).unwrap().len()))
            .collect();
        assert!(sizes.contains(&("A5-not-2PCI".into(), 6)));
        assert!(sizes.contains(&("F8-not-2PCI".into(), 4)));
        assert!(sizes.contains(&("Z27-not-2PCI".into(), 8)));
        assert!(sizes.contains(&("Z3^3-not-K2PCI".into(), 9)));
    }

    #[test]
    fn unknown_case_is_reported() {
        assert!(matches!(registry_case("nope"), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn small_cases_pass() {
        for id in
            ["Z8-not-2PCI", "A4-not-vertex-transitive", "Dic12-not-vertex-transitive", "G18-not-vertex-transitive"]
        {
            let r = verify_registry_case(id, &Budgets::default()).unwrap();
            assert!(r.passed, "{id}: {:?}", r.checks);
        }
    }
}
