use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayleyiso")).args(args).env_remove("CAYLEYISO_BUDGETS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn tetrahedral_witness_is_not_vertex_transitive() {
    let o = run(&["ci", "vtx", "--group", "A4", "--set", "(143),(234),(13)(24),e"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "vertex_transitive=false"), "{}", stdout(&o));
}

#[test]
fn built_graph_file_round_trips_through_aut() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("z4.mcay");
    let built = run(&["graph", "build", "--group", "Z4", "--bcay", "0,1", "--out", file.to_str().unwrap()]);
    assert!(built.status.success());
    let aut = run(&["graph", "aut", "--symbol", file.to_str().unwrap()]);
    assert!(aut.status.success());
    assert!(stdout(&aut).lines().any(|l| l == "aut_order=16"), "{}", stdout(&aut));
}

#[test]
fn json_and_tsv_reports_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let tsv = dir.path().join("r.tsv");
    let o = run(&[
        "census",
        "table1",
        "--max-order",
        "12",
        "--json",
        json.to_str().unwrap(),
        "--tsv",
        tsv.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(value.is_object() || value.is_array());
    assert!(std::fs::read_to_string(&tsv).unwrap().lines().count() > 1);
}

#[test]
fn errors_are_json_on_stderr() {
    let bad_group = run(&["group", "info", "--group", "Q7"]);
    assert_eq!(bad_group.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&bad_group.stderr).unwrap();
    assert!(err["error"]["kind"].is_string());

    let usage = run(&["ci", "vtx", "--group", "Z4"]);
    assert_eq!(usage.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&usage.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "usage");

    let bad_label = run(&["ci", "vtx", "--group", "Z4", "--set", "0,zz"]);
    assert_eq!(bad_label.status.code(), Some(1));
}

#[test]
fn sampled_orbit_checks_are_reproducible() {
    let args = ["census", "orbits", "--group", "D8", "--size", "3", "--samples", "5", "--seed", "7"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn orbit_file_lists_every_representative() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["census", "orbits", "--group", "D6", "--size", "2", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let lines = cayleyiso::census::read_orbit_file(&files[0]).unwrap();
    assert_eq!(lines.iter().map(|l| l.orbit_size).sum::<u64>(), 15);
}
