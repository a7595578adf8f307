//! Orbit enumeration on connection sets and the group-level K2PCI census.

mod classify;
mod elementary;
mod orbits;
mod persist;
mod registry;
mod screen;

pub use classify::{
    iso_class_partition, k2pci_group_test, table1_column, two_pci_group_test, Table1Entry, Table1Row, TABLE1,
};
pub use elementary::{elementary_four_census, ElementaryFourReport, ExtraPartCase, EXTRA_PARTS};
pub use orbits::{
    acting_group, binomial, k_orbits_on_subsets, orbit_reps_by_minimization, OrbitRep, SubsetAction, SubsetConstraints,
    SubsetOrbitIndex,
};
pub use persist::{
    format_orbit_lines, orbit_file_name, orbit_lines, parse_orbit_lines, read_orbit_file, registry_tsv, table1_tsv,
    write_orbit_file, OrbitLine,
};
pub use registry::{
    registry_case, registry_cases, run_case, verify_registry_case, CheckKind, CheckOutcome, RegistryCase,
    RegistryCheck, RegistryReport,
};
pub use screen::{group_2pci_screen, GroupScreen};
