//! Whole-group K2PCI and 2PCI classification by subset census.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budgets;
use crate::ci::{bcay_canonical, Certificate, CiVerdict, SetClassifier};
use crate::error::Result;
use crate::group::{named_group, ElemSet, FiniteGroup};

/// Groups `sets` by the isomorphism class of `BCay(G, ·)` with swappable
/// parts. Classes are listed in order of their first member; members keep
/// their input order.
pub fn iso_class_partition(g: &Arc<FiniteGroup>, sets: &[ElemSet], budgets: &Budgets) -> Result<Vec<Vec<usize>>> {
    let mut slot: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, &s) in sets.iter().enumerate() {
        let c = bcay_canonical(g, s, budgets)?;
        let next = classes.len();
        let k = *slot.entry(c).or_insert(next);
        if k == next {
            classes.push(Vec::new());
        }
        classes[k].push(i);
    }
    Ok(classes)
}

fn group_verdict(property: &str, g: &FiniteGroup) -> CiVerdict {
    CiVerdict {
        property: property.into(),
        group: g.name().into(),
        set: String::new(),
        result: true,
        certificate: None,
        budget_used: 0,
    }
}

/// Sizes to census: the bipartite complement `G \ S` has the same verdict
/// as `S`, so sizes above `|G|/2` are covered by smaller ones.
fn census_sizes(g: &FiniteGroup) -> std::ops::RangeInclusive<usize> {
    0..=g.order() / 2
}

/// Whether every `BCay(G, S)` is K2PCI: each isomorphism class of connection
/// sets must be a single kernel orbit. A failure carries two sets with
/// isomorphic graphs in different orbits.
pub fn k2pci_group_test(g: &Arc<FiniteGroup>, budgets: &Budgets) -> Result<CiVerdict> {
    let mut v = group_verdict("K2PCI-group", g);
    for k in census_sizes(g) {
        let cls = SetClassifier::new(g, k, budgets)?;
        v.budget_used += cls.index().admissible;
        if let Some(class) = cls.classes().iter().find(|c| c.len() > 1) {
            let reps = &cls.index().reps;
            v.result = false;
            v.certificate = Some(Certificate::ViolatingPair {
                s: g.format_set(reps[class[0]].set),
                t: g.format_set(reps[class[1]].set),
            });
            return Ok(v);
        }
    }
    Ok(v)
}

/// Whether every `BCay(G, S)` is 2PCI: each isomorphism class of connection
/// sets must lie inside the kernel orbits of `S` and `S⁻¹`.
pub fn two_pci_group_test(g: &Arc<FiniteGroup>, budgets: &Budgets) -> Result<CiVerdict> {
    let mut v = group_verdict("2PCI-group", g);
    for k in census_sizes(g) {
        let cls = SetClassifier::new(g, k, budgets)?;
        v.budget_used += cls.index().admissible;
        for class in cls.classes() {
            let s = cls.index().reps[class[0]].set;
            let inverse_orbit = cls.orbit_of(g.inverse_set(s))?;
            if let Some(&bad) = class[1..].iter().find(|&&o| o != inverse_orbit) {
                v.result = false;
                v.certificate =
                    Some(Certificate::ViolatingPair { s: g.format_set(s), t: g.format_set(cls.index().reps[bad].set) });
                return Ok(v);
            }
        }
    }
    Ok(v)
}

/// One line of the table of exceptional groups with its stored verdict.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Table1Entry {
    pub line: u32,
    pub order: usize,
    pub group: &'static str,
    pub expected_k2pci: bool,
    /// Needs the order-32 run, outside the default acceptance.
    pub stretch: bool,
}

const fn entry(line: u32, order: usize, group: &'static str, expected_k2pci: bool) -> Table1Entry {
    Table1Entry { line, order, group, expected_k2pci, stretch: order > 18 }
}

/// The 22 exceptional groups with their K2PCI column.
pub const TABLE1: [Table1Entry; 22] = [
    entry(1, 3, "Z3", true),
    entry(2, 4, "Z2^2", true),
    entry(2, 4, "Z4", true),
    entry(3, 5, "Z5", true),
    entry(4, 6, "Z6", true),
    entry(4, 6, "D6", true),
    entry(5, 7, "Z7", true),
    entry(6, 8, "Z2^3", true),
    entry(6, 8, "Q8", true),
    entry(6, 8, "Z4xZ2", false),
    entry(6, 8, "D8", false),
    entry(7, 9, "Z3^2", true),
    entry(8, 10, "D10", true),
    entry(9, 12, "A4", false),
    entry(9, 12, "D12", false),
    entry(9, 12, "Dic12", false),
    entry(10, 14, "D14", false),
    entry(11, 16, "Z2^4", true),
    entry(11, 16, "Z4xZ2^2", false),
    entry(11, 16, "Q8xZ2", false),
    entry(12, 18, "G18", false),
    entry(13, 32, "Z2^5", true),
];

/// A recomputed table row.
#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub entry: Table1Entry,
    pub computed: CiVerdict,
}

impl Table1Row {
    pub fn matches(&self) -> bool {
        self.computed.result == self.entry.expected_k2pci
    }
}

/// Recomputes the K2PCI verdict of the table entry named `group`.
pub fn table1_column(group: &str, budgets: &Budgets) -> Result<Table1Row> {
    let entry = *TABLE1
        .iter()
        .find(|e| e.group == group)
        .ok_or_else(|| crate::Error::MalformedInput(format!("`{group}` is not in the table of exceptional groups")))?;
    let g = Arc::new(named_group(entry.group)?);
    Ok(Table1Row { entry, computed: k2pci_group_test(&g, budgets)? })
}
