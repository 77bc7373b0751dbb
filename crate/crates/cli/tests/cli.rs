use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use closure_cli::document::{LiftDocument, ResolutionDocument, SpaceDocument};
use closure_space::oracle::enumerate_moore_families;
use closure_space::Resolution;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_closure-resolve"))
        .args(args)
        .env_remove("CLOSURE_RESOLVE_MAX_N")
        .output()
        .expect("binary runs")
}

fn run_on(args: &[&str], file: &str) -> Output {
    let path = data(file);
    let mut all = args.to_vec();
    all.push(path.to_str().unwrap());
    run(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn validate_reports_point_types() {
    let o = run_on(&["validate"], "diamond.json");
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("singular points: c"), "{text}");
    assert!(text.contains("regular points: a, b"));
    assert!(text.contains("topological: no"));

    let text = stdout(&run_on(&["validate"], "inessential.json"));
    assert!(text.contains("inessential points: 0"));
}

#[test]
fn validate_exit_codes() {
    let o = run_on(&["validate"], "missing_top.json");
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("full set is missing"));
    assert_eq!(code(&run_on(&["validate"], "malformed.json")), 2);
    assert_eq!(code(&run(&["validate", "/nonexistent/space.json"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn validate_reports_witness_with_names() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"elements":["a","b","c"],"closed_sets":[[0,1],[1,2],[0,1,2]]}"#).unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("{a,b} ∩ {b,c}"), "{}", stdout(&o));

    std::fs::write(&path, r#"{"elements":["x","y","z"],"preorder":[[0,0],[1,1],[2,2],[0,1],[1,2]]}"#).unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("x <= y <= z but not x <= z"));
}

#[test]
fn alternative_representations_validate() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        r#"{"elements":["a","b","c"],"closure_table":[[],[0],[1],[0,1,2],[0,1,2],[0,1,2],[0,1,2],[0,1,2]]}"#,
        r#"{"elements":["a","b","c"],"open_sets":[[0,2],[1,2],[0,1,2]]}"#,
    ];
    for (i, text) in cases.iter().enumerate() {
        let path = dir.path().join(format!("s{i}.json"));
        std::fs::write(&path, text).unwrap();
        let o = run(&["validate", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).contains("singular points: c"));
    }
    let path = dir.path().join("chain.json");
    std::fs::write(&path, r#"{"elements":["0","1","2"],"preorder":[[0,1],[1,2]],"complete":true}"#).unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert!(stdout(&o).contains("topological: yes"));
}

#[test]
fn size_cap_from_environment() {
    let path = data("diamond.json");
    let with_env = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_closure-resolve"))
            .args(["validate", path.to_str().unwrap()])
            .env("CLOSURE_RESOLVE_MAX_N", v)
            .output()
            .unwrap()
    };
    assert_eq!(code(&with_env("2")), 2);
    assert_eq!(code(&with_env("3")), 0);
    assert_eq!(code(&with_env("lots")), 2);
    assert_eq!(code(&with_env("99")), 2);
}

fn resolution_json(file: &str) -> ResolutionDocument {
    let o = run_on(&["resolve"], file);
    assert_eq!(code(&o), 0);
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn resolve_json_examples() {
    let d = resolution_json("diamond.json");
    assert_eq!(d.points.len(), 4);
    let labels: Vec<&str> = d.points.iter().map(|p| p.label.as_str()).collect();
    assert_eq!(labels, ["a|{a,c}", "b|{b,c}", "c|{a,c}", "c|{b,c}"]);
    assert_eq!(d.projection, [0, 1, 2, 2]);

    let i = resolution_json("inessential.json");
    assert_eq!(i.points.len(), 1);
    assert_eq!(i.projection, [1]);
    assert_eq!(i.essential, [1]);

    let s = resolution_json("sierpinski.json");
    assert_eq!(s.points.len(), 2);
    let strict: Vec<_> = s.order.iter().filter(|(a, b)| a != b).collect();
    assert_eq!(strict, [&(0, 1)]);
}

#[test]
fn resolve_writes_files_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let write = |tag: &str, collapse: bool| {
        let dot = dir.path().join(format!("{tag}.dot"));
        let json = dir.path().join(format!("{tag}.json"));
        let mut args = vec!["resolve", "--dot", dot.to_str().unwrap(), "--json", json.to_str().unwrap()];
        if collapse {
            args.push("--collapse");
        }
        let o = run_on(&args, "diamond.json");
        assert_eq!(code(&o), 0);
        (std::fs::read(&dot).unwrap(), std::fs::read(&json).unwrap(), o.stdout)
    };
    let first = write("one", true);
    let second = write("two", true);
    assert_eq!(first.0, second.0);
    assert_eq!(first.1, second.1);
    let dot = String::from_utf8(first.0).unwrap();
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 2);
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 0);

    let plain = String::from_utf8(write("three", false).0).unwrap();
    assert_eq!(plain.lines().filter(|l| l.contains("[label=")).count(), 4);
    assert_eq!(run_on(&["resolve"], "diamond.json").stdout, run_on(&["resolve"], "diamond.json").stdout);
}

#[test]
fn resolve_output_reconstructs_the_space() {
    for file in ["diamond.json", "inessential.json", "sierpinski.json", "point.json", "disc2.json"] {
        let doc: SpaceDocument = serde_json::from_slice(&std::fs::read(data(file)).unwrap()).unwrap();
        let original = doc.build(16).unwrap();
        assert_eq!(resolution_json(file).reconstruct(16).unwrap(), original, "{file}");
    }
}

#[test]
fn reconstruction_round_trip_on_all_three_point_spaces() {
    let mut count = 0;
    for space in enumerate_moore_families(3).unwrap() {
        let named = SpaceDocument::from_space(&space).build(16).unwrap();
        let text = serde_json::to_string(&ResolutionDocument::of(&Resolution::resolve(&named))).unwrap();
        let back: ResolutionDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.reconstruct(16).unwrap(), named);
        count += 1;
    }
    assert_eq!(count, 61);
}

fn verdicts(file: &str) -> Vec<String> {
    let o = run_on(&["check-map"], file);
    assert_eq!(code(&o), 0);
    stdout(&o).lines().take(4).map(str::to_owned).collect()
}

#[test]
fn check_map_verdicts() {
    // s is regular: both images {a,c} and {a} single out K = {a,c}
    assert_eq!(
        verdicts("map_s.json"),
        ["continuous: yes", "combinatorially continuous: no", "open: no", "regular: yes"]
    );
    assert_eq!(
        verdicts("map_f6.json"),
        ["continuous: yes", "combinatorially continuous: yes", "open: no", "regular: yes"]
    );
    assert_eq!(
        verdicts("map_identity.json"),
        ["continuous: yes", "combinatorially continuous: yes", "open: yes", "regular: yes"]
    );
    assert_eq!(
        verdicts("map_r.json"),
        ["continuous: no", "combinatorially continuous: no", "open: yes", "regular: no"]
    );
    let text = stdout(&run_on(&["check-map"], "map_r.json"));
    assert!(text.contains("not continuous at c: f({b,c}) = {a',b'} lies in no minimal neighborhood of a'"));
}

#[test]
fn check_map_rejects_bad_assignment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("map.json");
    let diamond = data("diamond.json");
    let text = format!(
        r#"{{"domain": {d:?}, "codomain": {d:?}, "assignment": [0, 1]}}"#,
        d = diamond.to_str().unwrap()
    );
    std::fs::write(&path, text).unwrap();
    assert_eq!(code(&run(&["check-map", path.to_str().unwrap()])), 2);
}

fn lift_to(file: &str) -> (i32, String, Option<LiftDocument>) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lift.json");
    let o = run_on(&["lift", "--out", out.to_str().unwrap()], file);
    let doc = std::fs::read(&out).ok().map(|b| serde_json::from_slice(&b).unwrap());
    (code(&o), stdout(&o), doc)
}

#[test]
fn lift_examples() {
    let (c, text, doc) = lift_to("map_f6.json");
    assert_eq!(c, 0);
    assert!(text.contains("commuting square: π∘F = f∘π yes, F continuous yes"));
    let doc = doc.unwrap();
    assert_eq!(doc.assignment, [0, 0]);
    assert_eq!(doc.target[0].label, "a|{a,c}");

    let (c, _, doc) = lift_to("map_identity.json");
    assert_eq!(c, 0);
    assert_eq!(doc.unwrap().assignment, [0, 1, 2, 3]);

    let (c, text, doc) = lift_to("map_f1.json");
    assert_eq!(c, 1);
    assert!(doc.is_none());
    assert!(text.contains("not regular at p, M = {p}"));
    assert!(text.contains("2 continuous commuting lifts exist"));
}

#[test]
fn enumerate_examples() {
    let o = run(&["enumerate", "--n", "2", "--verify", "all"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("7 spaces, 0 counterexamples\n"));

    let o = run(&["enumerate", "--n", "3", "--verify", "spaces", "--jobs", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("61 spaces, 0 counterexamples\n"));

    assert_eq!(code(&run(&["enumerate", "--n", "5", "--verify", "all"])), 2);
    assert_eq!(code(&run(&["enumerate", "--n", "5", "--verify", "spaces"])), 2);
    assert_eq!(stdout(&run(&["enumerate", "--n", "4", "--verify", "none"])), "2480 spaces\n");
}

#[test]
fn enumerate_sampling_and_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let json = |tag: &str| {
        let path = dir.path().join(tag);
        let o = run(&[
            "enumerate", "--n", "1", "--verify", "all", "--seed-count", "10", "--json", path.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        (o.stdout, std::fs::read(&path).unwrap())
    };
    let (first_out, first) = json("a.json");
    let (second_out, second) = json("b.json");
    assert_eq!(first_out, second_out);
    assert_eq!(first, second);
    let report: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(report["spaces"], 2);
    assert_eq!(report["sampled_spaces"], 10);
    assert!(report.get("seconds").is_none());
}
