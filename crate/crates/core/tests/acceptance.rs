//! Acceptance run: one line per criterion, then a non-zero exit if any failed.
//!
//! Each criterion carries its own time limit; a run that is correct but slower
//! than the limit is reported as a failure.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use cayleyiso::budget::Budgets;
use cayleyiso::census::{elementary_four_census, k2pci_group_test, table1_column, verify_registry_case, TABLE1};
use cayleyiso::ci::{
    bci_condition3, is_vertex_transitive, kmci_test, kmpci_test, normalizer_in_aut, two_pci_graph_test, SetClassifier,
};
use cayleyiso::group::{ElemSet, FiniteGroup};
use cayleyiso::iso::{automorphisms, find_isomorphism, ColorMode, ColoredDigraph};
use cayleyiso::mcayley::{
    apply_normalizer, brute_force_normalizer, build_bcay, build_mcayley, is_connected_bcay, lexicographic_blowup,
    normalizer_and_kernel, quotient_bcay, ConnectionSymbol, NormalizerElement,
};
use common::{bfs_connected, brute_aut_order, grp, random_set, random_symbol, SMALL_CORPUS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_611;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

/// Normalizer and kernel orders, and element-for-element agreement with the
/// brute-force normalizer on at most 8 vertices.
fn criterion_1() -> Outcome {
    let mut compared = 0;
    for spec in ["Z2", "Z3", "Z2^2", "Z4", "S3", "Q8"] {
        let g = grp(spec);
        let n = g.order() as u128;
        let aut = if g.order() <= 8 { brute_aut_order(&g) } else { g.aut_order() };
        if aut != g.aut_order() {
            return outcome(false, format!("{spec}: |Aut| {} vs brute force {aut}", g.aut_order()));
        }
        for m in [2usize, 3] {
            let groups = normalizer_and_kernel(&g, m).unwrap();
            let k_expected = aut * n.pow(m as u32);
            let n_expected = factorial(m) * k_expected;
            if groups.normalizer.order() != n_expected || groups.kernel.order() != k_expected {
                return outcome(
                    false,
                    format!(
                        "{spec} m={m}: |N|={} (want {n_expected}), |K|={} (want {k_expected})",
                        groups.normalizer.order(),
                        groups.kernel.order()
                    ),
                );
            }
            if m * g.order() <= 8 {
                let brute = brute_force_normalizer(&g, m).unwrap();
                let mut built = groups.normalizer.enumerate_elements(1 << 20).unwrap();
                built.sort();
                if built != brute {
                    return outcome(false, format!("{spec} m={m}: constructed N differs from brute force"));
                }
                compared += 1;
            }
        }
    }
    outcome(true, format!("12 orders exact, {compared} groups equal to brute force"))
}

/// `build(apply_normalizer(sym, n))` equals the arc image of `build(sym)` under `n`.
fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let specs = ["Z1", "Z2", "Z3", "Z2^2", "Z4", "S3", "Z6", "Q8", "D8", "Z2^3", "Dic12", "A4", "Z3^2"];
    let groups: Vec<Arc<FiniteGroup>> = specs.iter().map(|s| grp(s)).collect();
    for trial in 0..500 {
        let g = &groups[rng.gen_range(0..groups.len())];
        let m = rng.gen_range(1..=3);
        let sym = random_symbol(g, m, &mut rng);
        let n = NormalizerElement::random(g, m, &mut rng);
        let direct = build_mcayley(g, &sym).unwrap().adjacency().permuted(&n.vertex_permutation(g));
        let transformed = build_mcayley(g, &apply_normalizer(g, &sym, &n)).unwrap();
        if &direct != transformed.adjacency() {
            return outcome(false, format!("trial {trial}: {} m={m} differs", g.name()));
        }
    }
    outcome(true, "500/500 bit-exact")
}

fn criterion_3() -> Outcome {
    let b = Budgets::default();
    let z1 = grp("Z1");
    let mut checks = Vec::new();
    let empty = build_mcayley(&z1, &ConnectionSymbol::empty(2)).unwrap();
    checks.push(("Z1 2K1 kmci", kmci_test(&empty, &b).unwrap().result, true));
    let edge = build_bcay(&z1, ElemSet::singleton(0)).unwrap();
    checks.push(("Z1 K2 kmci", kmci_test(&edge, &b).unwrap().result, true));
    let mut arc = ConnectionSymbol::empty(3);
    arc.set(0, 1, ElemSet::singleton(0));
    arc.set(1, 0, ElemSet::singleton(0));
    let arc = build_mcayley(&z1, &arc).unwrap();
    let aut = automorphisms(&ColoredDigraph::uncolored(arc.adjacency().clone()), ColorMode::Fixed).unwrap();
    checks.push(("Z1 m=3 |Aut|=2", aut.order() == 2, true));
    checks.push(("Z1 m=3 kmci", kmci_test(&arc, &b).unwrap().result, false));
    let z3 = grp("Z3");
    let mut tri = ConnectionSymbol::empty(2);
    tri.set(0, 0, ElemSet::from_elems([1, 2]));
    checks.push(("Z3 triangle kmci", kmci_test(&build_mcayley(&z3, &tri).unwrap(), &b).unwrap().result, false));
    for spec in ["Z2", "Z3"] {
        let g = grp(spec);
        let mut sym = ConnectionSymbol::empty(3);
        sym.set(0, 1, ElemSet::singleton(0));
        sym.set(1, 0, ElemSet::singleton(0));
        let v = kmpci_test(&build_mcayley(&g, &sym).unwrap(), &b).unwrap().result;
        checks.push((if spec == "Z2" { "Z2 matching kmpci" } else { "Z3 matching kmpci" }, v, false));
    }
    let bad: Vec<&str> = checks.iter().filter(|(_, got, want)| got != want).map(|(n, _, _)| *n).collect();
    outcome(bad.is_empty(), if bad.is_empty() { format!("{} exact matches", checks.len()) } else { bad.join(", ") })
}

const CASE_LIMIT: Duration = Duration::from_secs(600);

fn criterion_4() -> Outcome {
    let b = Budgets::default();
    let mut parts = Vec::new();
    let mut ok = true;
    for id in ["Z8-not-2PCI", "Z27-not-2PCI", "Z3^3-not-K2PCI", "A5-not-2PCI", "F8-not-2PCI"] {
        let t = Instant::now();
        let report = verify_registry_case(id, &b);
        let took = t.elapsed();
        let passed = matches!(&report, Ok(r) if r.passed) && took <= CASE_LIMIT;
        ok &= passed;
        parts.push(format!("{id} {} {:.1}s", if passed { "ok" } else { "FAIL" }, took.as_secs_f64()));
    }
    outcome(ok, parts.join("; "))
}

fn criterion_5() -> Outcome {
    let b = Budgets::default();
    let mut bad = Vec::new();
    for (spec, set) in [
        ("A4", "(143),(234),(13)(24),Id(G)"),
        ("Dic12", "x^2, xy, xy^-1, x^-1, Id(G), yx"),
        ("G18", "e_1, e_2, x, e_1x, e_1^-1, xe_1e_2"),
    ] {
        let g = grp(spec);
        let d = build_bcay(&g, g.parse_set(set).unwrap()).unwrap();
        if is_vertex_transitive(&d).unwrap() {
            bad.push(format!("{spec} vertex-transitive"));
        }
    }
    for spec in ["D6", "Q8", "D10"] {
        if !k2pci_group_test(&grp(spec), &b).unwrap().result {
            bad.push(format!("{spec} not K2PCI"));
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() { "3 not vertex-transitive, 3 K2PCI groups".into() } else { bad.join(", ") },
    )
}

fn criterion_6() -> Outcome {
    let b = Budgets::default();
    let mut matched = 0;
    let mut bad = Vec::new();
    let entries: Vec<_> = TABLE1.iter().filter(|e| !e.stretch && e.order <= 18).collect();
    for e in &entries {
        match table1_column(e.group, &b) {
            Ok(row) if row.matches() => matched += 1,
            Ok(row) => bad.push(format!("{} computed {}", e.group, row.computed.result)),
            Err(err) => bad.push(format!("{}: {err}", e.group)),
        }
    }
    let ok = bad.is_empty() && entries.len() == 21;
    outcome(
        ok,
        format!(
            "{matched}/{} match{}",
            entries.len(),
            if ok { String::new() } else { format!(" ({})", bad.join(", ")) }
        ),
    )
}

fn criterion_7() -> Outcome {
    let r = elementary_four_census(&Budgets::default()).unwrap();
    let single = r.cases.iter().filter(|c| c.same_orbit_classes == 1).count();
    outcome(
        r.orbit_count == 12 && r.reduction_covers && r.cases_distinct && single == 12 && r.passed(),
        format!(
            "{} Aut classes, {} supersets each matching one case, {single}/12 single semiregular class, {} iso classes = kernel orbits",
            r.orbit_count,
            r.supersets,
            r.iso_classes.len()
        ),
    )
}

/// Property suites over the corpus groups of order at most 16.
fn criterion_8() -> Outcome {
    let b = Budgets::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let groups: Vec<Arc<FiniteGroup>> = SMALL_CORPUS.iter().map(|s| grp(s)).collect();
    let mut violations: Vec<String> = Vec::new();

    // algebraic vs breadth-first connectivity
    for _ in 0..1000 {
        let g = &groups[rng.gen_range(0..groups.len())];
        let s = random_set(g, &mut rng);
        let d = build_bcay(g, s).unwrap();
        let algebraic = !s.is_empty() && g.closure(g.product_set(s, g.inverse_set(s))) == g.all();
        match is_connected_bcay(g, s) {
            Ok(lib) if lib == algebraic && algebraic == bfs_connected(d.adjacency()) => {}
            other => violations.push(format!("connectivity {} {}: {other:?}", g.name(), g.format_set(s))),
        }
    }

    // three-way equivalence on 2PCI graphs, abelian 2PCI = K2PCI, orbit counting
    let mut two_pci_graphs = 0;
    let mut census_runs = 0;
    for g in &groups {
        for k in 0..=g.order() {
            let cls = SetClassifier::new(g, k, &b).unwrap();
            census_runs += 1;
            if let Err(e) = cls.index().check_orbit_counting() {
                violations.push(format!("orbit counting {} k={k}: {e}", g.name()));
            }
            if k == 0 || k > g.order() / 2 {
                continue;
            }
            for (i, rep) in cls.index().reps.iter().enumerate() {
                let s = rep.set;
                let class = cls.class_of(s).unwrap();
                let inverse = cls.orbit_of(g.inverse_set(s)).unwrap();
                let two_pci = class.iter().all(|&o| o == i || o == inverse);
                let k2pci = class == [i];
                if g.is_abelian() && two_pci != k2pci {
                    violations.push(format!("abelian {} {}: 2PCI {two_pci} K2PCI {k2pci}", g.name(), g.format_set(s)));
                }
                if !two_pci {
                    continue;
                }
                two_pci_graphs += 1;
                let d = build_bcay(g, s).unwrap();
                let transitive = normalizer_in_aut(&d, &b).unwrap().is_vertex_transitive();
                let cond3 = bci_condition3(g, s).unwrap().is_some();
                if k2pci != transitive || k2pci != cond3 {
                    violations.push(format!(
                        "three-way {} {}: K2PCI {k2pci}, transitive {transitive}, S^a=S^-1g {cond3}",
                        g.name(),
                        g.format_set(s)
                    ));
                }
            }
        }
    }
    // spot-check the classifier reading against the graph test itself
    for _ in 0..40 {
        let g = &groups[rng.gen_range(1..groups.len())];
        let s = random_set(g, &mut rng);
        if s.is_empty() || s.len() > g.order() / 2 {
            continue;
        }
        let cls = SetClassifier::new(g, s.len(), &b).unwrap();
        let i = cls.orbit_of(s).unwrap();
        let inverse = cls.orbit_of(g.inverse_set(s)).unwrap();
        let expected = cls.class_of(s).unwrap().iter().all(|&o| o == i || o == inverse);
        if two_pci_graph_test(g, s, &b).unwrap().result != expected {
            violations.push(format!("graph test {} {}", g.name(), g.format_set(s)));
        }
    }

    // quotient lifts are lexicographic products with empty graphs
    let mut quotient_samples = 0;
    while quotient_samples < 50 {
        let g = &groups[rng.gen_range(0..groups.len())];
        let normal: Vec<ElemSet> = g.all_subgroups().iter().map(|h| h.members).filter(|&h| g.is_normal(h)).collect();
        let h = normal[rng.gen_range(0..normal.len())];
        let q = g.order() / h.len();
        let s_bar = ElemSet(rng.gen::<u64>() & ((1u64 << q) - 1).max(1));
        let pair = quotient_bcay(g, h, s_bar).unwrap();
        let blown = lexicographic_blowup(pair.quotient.adjacency(), h.len());
        let lifted = ColoredDigraph::uncolored(pair.lifted.adjacency().clone());
        let blown = ColoredDigraph::uncolored(blown);
        let iso = find_isomorphism(&lifted, &blown, ColorMode::Fixed).unwrap();
        if !iso.is_some_and(|p| lifted.is_isomorphism_to(&blown, &p, ColorMode::Fixed)) {
            violations.push(format!("quotient {} |H|={} S̄={:?}", g.name(), h.len(), s_bar));
        }
        quotient_samples += 1;
    }

    outcome(
        violations.is_empty(),
        format!(
            "1000 connectivity samples, {two_pci_graphs} 2PCI graphs, {census_runs} census runs, 50 quotients; {} violations{}",
            violations.len(),
            violations.first().map(|v| format!(" (first: {v})")).unwrap_or_default()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("normalizer algebra", criterion_1, Duration::from_secs(10)),
        ("symbol transformation", criterion_2, Duration::from_secs(30)),
        ("m-Cayley witnesses", criterion_3, Duration::from_secs(5)),
        ("registry counterexamples", criterion_4, Duration::from_secs(5 * 600)),
        ("bi-Cayley witnesses", criterion_5, Duration::from_secs(300)),
        ("table column", criterion_6, Duration::from_secs(1800)),
        ("Z2^4 valency 6-8 classes", criterion_7, Duration::from_secs(600)),
        ("property suites", criterion_8, Duration::from_secs(1800)),
    ];
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let label = format!("criterion {} ({name})", i + 1);
        if filter.as_ref().is_some_and(|f| !label.contains(f.as_str())) {
            continue;
        }
        let t = Instant::now();
        let o = run();
        let took = t.elapsed();
        let passed = o.passed && took <= *limit;
        failed += usize::from(!passed);
        println!(
            "{label}: {} {} [{:.2}s, limit {}s]",
            if passed { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
