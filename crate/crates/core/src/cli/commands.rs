use std::fs;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use cayleyiso::budget::Budgets;
use cayleyiso::census::{
    elementary_four_census, group_2pci_screen, k2pci_group_test, k_orbits_on_subsets, registry_cases, registry_tsv,
    run_case, table1_column, table1_tsv, two_pci_group_test, write_orbit_file, SubsetAction, SubsetConstraints, TABLE1,
};
use cayleyiso::ci::{
    bci_condition3, is_vertex_transitive, k2pci_graph_test, k2pci_graph_test_direct, kmci_test, kmpci_test,
    two_pci_graph_test, two_pci_graph_test_direct, CiVerdict, SetClassifier,
};
use cayleyiso::group::{named_group, ElemSet, FiniteGroup};
use cayleyiso::iso::{automorphisms, canonical_with_budget, find_isomorphism, ColorMode, ColoredDigraph};
use cayleyiso::mcayley::{build_bcay, MCayleyDigraph};
use cayleyiso::{Error, Result};

use super::args::{CensusCmd, CiCmd, Command, Common, GraphCmd, GraphSource, GroupCmd, ModeArg, SetArgs};
use super::Report;

pub fn dispatch(cmd: &Command, common: &Common, b: &Budgets) -> Result<Report> {
    match cmd {
        Command::Group(c) => group(c, b),
        Command::Graph(c) => graph(c, b),
        Command::Ci(c) => ci(c, b),
        Command::Census(c) => census(c, common, b),
    }
}

/// `key=value` lines as a two-column table.
pub fn lines_as_tsv(lines: &[String]) -> String {
    let mut out = String::from("key\tvalue\n");
    for l in lines {
        let (k, v) = l.split_once('=').unwrap_or((l, ""));
        out.push_str(&format!("{k}\t{v}\n"));
    }
    out
}

fn load_group(spec: &str) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(named_group(spec)?))
}

fn load_graph(src: &GraphSource) -> Result<MCayleyDigraph> {
    match (&src.symbol, &src.group, &src.bcay) {
        (Some(path), None, None) => MCayleyDigraph::from_text(&fs::read_to_string(path)?),
        (None, Some(g), Some(s)) => {
            let g = load_group(g)?;
            let s = g.parse_set(s)?;
            build_bcay(&g, s)
        }
        _ => Err(Error::MalformedInput("give either --symbol <file> or --group with --bcay".into())),
    }
}

fn colored(d: &MCayleyDigraph, mode: ModeArg) -> (ColoredDigraph, ColorMode) {
    match mode {
        ModeArg::Uncolored => (ColoredDigraph::uncolored(d.adjacency().clone()), ColorMode::Fixed),
        ModeArg::Fixed => (ColoredDigraph::from_mcayley(d), ColorMode::Fixed),
        ModeArg::Permutable => (ColoredDigraph::from_mcayley(d), ColorMode::Permutable),
    }
}

fn verdict_report(v: CiVerdict) -> Report {
    let mut r = Report::new(v.to_json());
    r.line("property", &v.property);
    r.line("group", &v.group);
    r.line("set", &v.set);
    r.line("result", v.result);
    if let Some(c) = &v.certificate {
        r.line("certificate", serde_json::to_string(c).expect("serializable"));
    }
    r.line("budget_used", v.budget_used);
    r
}

fn group(cmd: &GroupCmd, b: &Budgets) -> Result<Report> {
    match cmd {
        GroupCmd::Info(a) => {
            let g = load_group(&a.group)?;
            let mut r = Report::new(json!({
                "group": g.to_json(),
                "abelian": g.is_abelian(),
                "exponent": g.exponent(),
                "solvable": g.is_solvable(),
                "aut_order": g.aut_order().to_string(),
            }));
            r.line("group", g.name());
            r.line("order", g.order());
            r.line("abelian", g.is_abelian());
            r.line("exponent", g.exponent());
            r.line("solvable", g.is_solvable());
            r.line("aut_order", g.aut_order());
            r.line("labels", g.labels().join(","));
            Ok(r)
        }
        GroupCmd::Aut(a) => {
            let g = load_group(&a.group)?;
            let gens: Vec<String> = g
                .automorphism_generators()
                .iter()
                .map(|m| {
                    g.elements()
                        .map(|x| format!("{}->{}", g.label(x), g.label(m.apply(x))))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            let mut r =
                Report::new(json!({ "group": g.name(), "aut_order": g.aut_order().to_string(), "generators": gens }));
            r.line("aut_order", g.aut_order());
            for gen in &gens {
                r.line("generator", gen);
            }
            Ok(r)
        }
        GroupCmd::Subgroups(a) => {
            let g = load_group(&a.group)?;
            let subs = g.all_subgroups();
            let mut rows = Vec::new();
            let mut tsv = String::from("order\tnormal\tmembers\n");
            for s in subs.iter() {
                let members = g.format_set(s.members);
                let normal = g.is_normal(s.members);
                tsv.push_str(&format!("{}\t{normal}\t{members}\n", s.order()));
                rows.push(json!({ "order": s.order(), "normal": normal, "members": members }));
            }
            let mut r = Report::new(json!({ "group": g.name(), "subgroups": rows }));
            r.line("subgroups", subs.len());
            for s in subs.iter() {
                r.line(
                    "subgroup",
                    format!(
                        "order={} normal={} members={{{}}}",
                        s.order(),
                        g.is_normal(s.members),
                        g.format_set(s.members)
                    ),
                );
            }
            r.tsv = Some(tsv);
            Ok(r)
        }
        GroupCmd::Screen(a) => {
            let g = load_group(&a.group)?;
            let s = group_2pci_screen(&g, b)?;
            let mut r = Report::new(serde_json::to_value(&s)?);
            r.line("group", &s.group);
            r.line("solvable", s.solvable);
            r.line("sylow_condition", s.sylow_condition);
            r.line("same_order_subgroups_equivalent", s.same_order_subgroups_equivalent);
            r.line("fif_group", s.fif_group);
            r.line("iso_group", s.iso_group);
            r.line("passes_necessary", s.passes_necessary());
            r.line("eliminated_by", s.eliminated_by.join(","));
            match &s.exhaustive {
                Some(v) => r.line("two_pci_group", v.result),
                None => r.line("two_pci_group", "not_run"),
            }
            Ok(r)
        }
    }
}

fn graph(cmd: &GraphCmd, b: &Budgets) -> Result<Report> {
    match cmd {
        GraphCmd::Build { source, out } => {
            let d = load_graph(source)?;
            let text = d.to_text();
            if let Some(path) = out {
                fs::write(path, &text)?;
            }
            let mut r = Report::new(d.to_json());
            r.lines = text.lines().map(str::to_string).collect();
            Ok(r)
        }
        GraphCmd::Aut { source, mode } => {
            let d = load_graph(source)?;
            let (c, m) = colored(&d, *mode);
            let a = automorphisms(&c, m)?;
            let gens: Vec<String> = a.generators().iter().map(|p| p.to_cycle_string()).collect();
            let mut r = Report::new(
                json!({ "vertices": d.vertex_count(), "aut_order": a.order().to_string(), "generators": gens }),
            );
            r.line("vertices", d.vertex_count());
            r.line("aut_order", a.order());
            r.line("generators", gens.len());
            Ok(r)
        }
        GraphCmd::Canon { source, mode } => {
            let d = load_graph(source)?;
            let (c, m) = colored(&d, *mode);
            let f = canonical_with_budget(&c, m, b.canon_nodes)?;
            let mut r = Report::new(json!({ "canon": f.hex(), "search_nodes": f.search_nodes }));
            r.line("canon", f.hex());
            r.line("search_nodes", f.search_nodes);
            Ok(r)
        }
        GraphCmd::Iso { source, other_bcay, other_symbol, mode } => {
            let d1 = load_graph(source)?;
            let other = GraphSource {
                group: other_bcay.as_ref().map(|_| d1.group().name().to_string()),
                bcay: other_bcay.clone(),
                symbol: other_symbol.clone(),
            };
            let d2 = load_graph(&other)?;
            let (c1, m) = colored(&d1, *mode);
            let (c2, _) = colored(&d2, *mode);
            let iso = if c1.vertex_count() == c2.vertex_count() { find_isomorphism(&c1, &c2, m)? } else { None };
            let images: Option<Vec<usize>> = iso.as_ref().map(|p| p.images().collect());
            let mut r = Report::new(json!({ "isomorphic": iso.is_some(), "isomorphism": images }));
            r.line("isomorphic", iso.is_some());
            if let Some(imgs) = &images {
                r.line("isomorphism", imgs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
            }
            Ok(r)
        }
    }
}

fn set_args(a: &SetArgs) -> Result<(Arc<FiniteGroup>, ElemSet)> {
    let g = load_group(&a.group)?;
    let s = g.parse_set(&a.set)?;
    Ok((g, s))
}

fn ci(cmd: &CiCmd, b: &Budgets) -> Result<Report> {
    match cmd {
        CiCmd::Kmci(src) => Ok(verdict_report(kmci_test(&load_graph(src)?, b)?)),
        CiCmd::Kmpci(src) => Ok(verdict_report(kmpci_test(&load_graph(src)?, b)?)),
        CiCmd::TwoPci { set, direct } => {
            let (g, s) = set_args(set)?;
            let v = if *direct { two_pci_graph_test_direct(&g, s, b)? } else { two_pci_graph_test(&g, s, b)? };
            Ok(verdict_report(v))
        }
        CiCmd::K2pci { set, direct } => {
            let (g, s) = set_args(set)?;
            let v = if *direct { k2pci_graph_test_direct(&g, s, b)? } else { k2pci_graph_test(&g, s, b)? };
            Ok(verdict_report(v))
        }
        CiCmd::Bci3(a) => {
            let (g, s) = set_args(a)?;
            let found = bci_condition3(&g, s)?;
            let mut r = Report::new(json!({
                "group": g.name(),
                "set": g.format_set(s),
                "holds": found.is_some(),
                "alpha": found.as_ref().map(|(m, _)| m.images()),
                "element": found.as_ref().map(|&(_, x)| g.label(x).to_string()),
            }));
            r.line("holds", found.is_some());
            if let Some((m, x)) = &found {
                r.line("alpha", g.elements().map(|y| g.label(m.apply(y)).to_string()).collect::<Vec<_>>().join(","));
                r.line("element", g.label(*x));
            }
            Ok(r)
        }
        CiCmd::Vtx(a) => {
            let (g, s) = set_args(a)?;
            let vt = is_vertex_transitive(&build_bcay(&g, s)?)?;
            let mut r = Report::new(json!({ "group": g.name(), "set": g.format_set(s), "vertex_transitive": vt }));
            r.line("vertex_transitive", vt);
            Ok(r)
        }
    }
}

/// `(h⁻¹ S g)^α` for random `h, g` and a random automorphism `α`.
fn random_kernel_image(
    g: &FiniteGroup,
    s: ElemSet,
    autos: &[cayleyiso::group::GroupMap],
    rng: &mut ChaCha8Rng,
) -> ElemSet {
    let h = rng.gen_range(0..g.order());
    let x = rng.gen_range(0..g.order());
    let alpha = &autos[rng.gen_range(0..autos.len())];
    alpha.map_set(g.right_translate(g.left_translate(g.inv(h), s), x))
}

fn census(cmd: &CensusCmd, common: &Common, b: &Budgets) -> Result<Report> {
    match cmd {
        CensusCmd::Orbits { group, size, automorphisms: by_aut, contains_identity, connected, out_dir, samples } => {
            let g = load_group(&group.group)?;
            let constraints = SubsetConstraints { contains_identity: *contains_identity, connected: *connected };
            let action = if *by_aut { SubsetAction::Automorphisms } else { SubsetAction::Kernel };
            let index = k_orbits_on_subsets(&g, *size..=*size, constraints, action, b)?;
            index.check_orbit_counting()?;
            let reps: Vec<serde_json::Value> =
                index.reps.iter().map(|o| json!({ "rep": g.format_set(o.set), "orbit_size": o.orbit_size })).collect();
            let mut r = Report::new(json!({
                "group": g.name(),
                "size": size,
                "action": action,
                "constraints": constraints,
                "acting_order": index.acting_order.to_string(),
                "admissible": index.admissible,
                "orbits": reps,
            }));
            r.line("orbits", index.reps.len());
            r.line("admissible", index.admissible);
            let mut tsv = String::from("rep\torbit_size\n");
            for o in &index.reps {
                r.line("rep", format!("{{{}}} orbit_size={}", g.format_set(o.set), o.orbit_size));
                tsv.push_str(&format!("{}\t{}\n", g.format_set(o.set), o.orbit_size));
            }
            r.tsv = Some(tsv);
            if out_dir.is_some() || *samples > 0 {
                if *by_aut || *contains_identity || *connected {
                    return Err(Error::MalformedInput(
                        "--out-dir and --samples apply to the unconstrained kernel action".into(),
                    ));
                }
                let cls = SetClassifier::new(&g, *size, b)?;
                if let Some(dir) = out_dir {
                    r.line("orbit_file", write_orbit_file(dir, &cls)?.display());
                }
                if *samples > 0 {
                    let autos = g.automorphisms()?;
                    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
                    let mut violations = 0usize;
                    for (i, o) in cls.index().reps.iter().enumerate() {
                        for _ in 0..*samples {
                            let t = random_kernel_image(&g, o.set, &autos, &mut rng);
                            violations += usize::from(cls.orbit_of(t)? != i);
                        }
                    }
                    r.line("sample_violations", violations);
                    r.mismatch |= violations > 0;
                }
            }
            Ok(r)
        }
        CensusCmd::Classify(a) => {
            let g = load_group(&a.group)?;
            let k2 = k2pci_group_test(&g, b)?;
            let two = two_pci_group_test(&g, b)?;
            let mut r = Report::new(json!({ "k2pci_group": k2.to_json(), "two_pci_group": two.to_json() }));
            r.line("group", g.name());
            r.line("k2pci_group", k2.result);
            r.line("two_pci_group", two.result);
            for v in [&k2, &two] {
                if let Some(c) = &v.certificate {
                    r.line(&format!("{}_certificate", v.property), serde_json::to_string(c)?);
                }
            }
            Ok(r)
        }
        CensusCmd::Table1 { max_order } => {
            let mut rows = Vec::new();
            let mut failures = Vec::new();
            for e in TABLE1.iter().filter(|e| if e.stretch { common.stretch_z2_5 } else { e.order <= *max_order }) {
                match table1_column(e.group, b) {
                    Ok(row) => rows.push(row),
                    Err(err) => failures.push((e.group, err)),
                }
            }
            let mut r = Report::new(json!({
                "rows": rows,
                "not_computed": failures.iter().map(|(g, e)| json!({ "group": g, "error": e.to_string() })).collect::<Vec<_>>(),
            }));
            for row in &rows {
                r.line(
                    row.entry.group,
                    format!(
                        "expected={} computed={} match={}",
                        yn(row.entry.expected_k2pci),
                        yn(row.computed.result),
                        row.matches()
                    ),
                );
            }
            for (group, err) in &failures {
                r.line(group, format!("not_computed ({err})"));
            }
            let matched = rows.iter().filter(|x| x.matches()).count();
            r.line("matched", format!("{matched}/{}", rows.len()));
            r.mismatch = matched != rows.len() || !failures.is_empty();
            r.tsv = Some(table1_tsv(&rows));
            Ok(r)
        }
        CensusCmd::Registry { id } => {
            let cases = registry_cases()?;
            let selected: Vec<_> =
                if id == "all" { cases } else { cases.into_iter().filter(|c| &c.id == id).collect() };
            if selected.is_empty() {
                return Err(Error::UnknownCase(id.clone()));
            }
            let reports = selected.iter().map(|c| run_case(c, b)).collect::<Result<Vec<_>>>()?;
            let mut r = Report::new(serde_json::to_value(&reports)?);
            for rep in &reports {
                r.line(&rep.id, if rep.passed { "passed" } else { "FAILED" });
                for c in &rep.checks {
                    let kind = serde_json::to_value(c.kind)?;
                    r.line(&format!("{}.{}", rep.id, kind.as_str().unwrap_or("")), c.observed);
                }
            }
            r.mismatch = reports.iter().any(|x| !x.passed);
            r.tsv = Some(registry_tsv(&reports));
            Ok(r)
        }
        CensusCmd::Z2_4 => {
            let rep = elementary_four_census(b)?;
            let mut r = Report::new(serde_json::to_value(&rep)?);
            r.line("orbits", rep.orbit_count);
            r.line("admissible", rep.admissible);
            r.line("supersets", rep.supersets);
            r.line("reduction_covers", rep.reduction_covers);
            r.line("cases_distinct", rep.cases_distinct);
            r.line("iso_classes", rep.iso_classes.len());
            r.line("kernel_orbits", rep.kernel_orbits.len());
            for c in &rep.cases {
                r.line(
                    "case",
                    format!("{{{}}} orbit={} same_orbit_classes={}", c.extra, c.orbit, c.same_orbit_classes),
                );
            }
            r.line("passed", rep.passed());
            r.mismatch = !rep.passed();
            Ok(r)
        }
    }
}

fn yn(b: bool) -> &'static str {
    if b {
        "Y"
    } else {
        "N"
    }
}
