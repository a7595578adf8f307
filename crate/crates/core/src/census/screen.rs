//! Necessary conditions for a group to be 2PCI, followed by the exhaustive
//! census when it fits the budget.

use std::sync::Arc;

use serde::Serialize;

use super::classify::two_pci_group_test;
use super::orbits::binomial;
use crate::budget::Budgets;
use crate::ci::CiVerdict;
use crate::error::Result;
use crate::group::{FiniteGroup, SubgroupEquivalence, SylowReport};

#[derive(Clone, Debug, Serialize)]
pub struct GroupScreen {
    pub group: String,
    pub order: usize,
    pub solvable: bool,
    pub sylow_condition: bool,
    pub sylow: SylowReport,
    pub same_order_subgroups_equivalent: bool,
    pub subgroups: SubgroupEquivalence,
    pub fif_group: bool,
    pub iso_group: bool,
    /// Names of the necessary conditions that failed.
    pub eliminated_by: Vec<&'static str>,
    /// The census verdict, absent when the census would exceed the budget.
    pub exhaustive: Option<CiVerdict>,
}

impl GroupScreen {
    pub fn passes_necessary(&self) -> bool {
        self.eliminated_by.is_empty()
    }
}

/// Connection sets the 2PCI census enumerates for `g`.
fn census_size(g: &FiniteGroup) -> u64 {
    (0..=g.order() / 2).map(|k| binomial(g.order(), k)).fold(0, u64::saturating_add)
}

pub fn group_2pci_screen(g: &Arc<FiniteGroup>, budgets: &Budgets) -> Result<GroupScreen> {
    let solvable = g.is_solvable();
    let (sylow_condition, sylow) = g.sylow_condition_2pci();
    let (same_order_subgroups_equivalent, subgroups) = g.same_order_subgroups_aut_equivalent();
    let fif_group = g.is_fif_group();
    let iso_group = g.is_iso_group()?;
    let mut eliminated_by = Vec::new();
    for (ok, name) in [
        (solvable, "solvable"),
        (sylow_condition, "sylow_condition"),
        (same_order_subgroups_equivalent, "same_order_subgroups_equivalent"),
        (fif_group, "fif_group"),
        (iso_group, "iso_group"),
    ] {
        if !ok {
            eliminated_by.push(name);
        }
    }
    let exhaustive = if census_size(g) <= budgets.census { Some(two_pci_group_test(g, budgets)?) } else { None };
    Ok(GroupScreen {
        group: g.name().to_string(),
        order: g.order(),
        solvable,
        sylow_condition,
        sylow,
        same_order_subgroups_equivalent,
        subgroups,
        fif_group,
        iso_group,
        eliminated_by,
        exhaustive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;

    fn screen(spec: &str) -> GroupScreen {
        group_2pci_screen(&Arc::new(named_group(spec).unwrap()), &Budgets::default()).unwrap()
    }

    #[test]
    fn cyclic_27_fails_the_sylow_condition() {
        let s = screen("Z27");
        assert!(s.eliminated_by.contains(&"sylow_condition"));
        assert!(s.exhaustive.is_none());
    }

    #[test]
    fn z4_by_z2_fails_subgroup_equivalence() {
        let s = screen("Z4xZ2");
        assert!(s.eliminated_by.contains(&"same_order_subgroups_equivalent"));
        assert!(!s.exhaustive.unwrap().result);
    }

    #[test]
    fn cyclic_9_passes_every_screen() {
        let s = screen("Z9");
        assert!(s.passes_necessary(), "{:?}", s.eliminated_by);
        assert!(s.exhaustive.unwrap().result);
    }
}
