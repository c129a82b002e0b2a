use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn rexact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rexact")).current_dir(root()).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("rexact-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    let p = d.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn shipped_scenarios_pass() {
    for s in ["empty", "example-A3-restricted", "serre-S1-localization", "k4-wic"] {
        let o = rexact(&["run-scenario", &format!("scenarios/{s}.json")]);
        assert_eq!(o.status.code(), Some(0), "{s}: {}{}", stdout(&o), stderr(&o));
        assert!(stdout(&o).contains("result: pass"));
    }
}

#[test]
fn restricted_scenario_reports_the_r3_witness() {
    let o = rexact(&["run-scenario", "scenarios/example-A3-restricted.json", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let r3 = &v["assertions"][0];
    assert_eq!(r3["observed"], "CounterexampleFound via P3 -> I2 -> S3");
    assert!(r3["witness"].as_str().unwrap().contains("I2 -> S3"));
}

#[test]
fn reports_are_reproducible() {
    let a = rexact(&["run-scenario", "scenarios/example-A3-restricted.json", "--format", "json"]);
    let b = rexact(&["--sequential", "run-scenario", "scenarios/example-A3-restricted.json", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let t = rexact(&["run-scenario", "scenarios/empty.json", "--timings"]);
    assert_eq!(t.status.code(), Some(0));
}

#[test]
fn dhom_table_matches_golden() {
    let golden = std::fs::read_to_string(root().join("fixtures/golden/a3-dhom.tsv")).unwrap();
    for class in ["fixtures/a3.json", "fixtures/a3-restricted.json"] {
        let o = rexact(&["dhom", "--class", class, "--format", "tsv"]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), golden, "{class}");
    }
    let o = rexact(&["dhom", "--class", "fixtures/a3.json", "--src", "I2", "--dst", "S1", "--shift", "1"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn dhom_accepts_complex_files() {
    let cx = scratch("cone.json", r#"{"entries": {"-1": "S2", "0": "I2"}, "diffs": {"-1": {"blocks": {"2": [["1"]]}}}}"#);
    let cx = cx.to_str().unwrap();
    let o = rexact(&["dhom", "--class", "fixtures/a3.json", "--src", cx, "--dst", "S3"]);
    assert_eq!(stdout(&o).trim(), "1", "{}", stderr(&o));
}

#[test]
fn exit_codes() {
    let o = rexact(&["check-axioms", "--class", "fixtures/a3-restricted.json", "--axiom", "R3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = rexact(&["check-axioms", "--class", "fixtures/a3.json", "--axiom", "R3", "--axiom", "L3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = rexact(&["hull-check", "--class", "fixtures/a3-restricted.json", "--seq", "fixtures/a3-removed.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("conflation of the class: false"));
    let failing = scratch(
        "fail.json",
        &format!(
            r#"{{"name": "fail", "category": "{}", "assertions": [{{"op": "check_axiom", "axiom": "R3", "expect": "HoldsOnProbes"}}]}}"#,
            root().join("fixtures/a3-restricted.json").display()
        ),
    );
    let o = rexact(&["run-scenario", failing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL]"));
    let o = rexact(&["dhom", "--class", "fixtures/a3.json", "--format", "yaml"]);
    assert_eq!(o.status.code(), Some(2));
    let o = rexact(&["qhom", "--class", "fixtures/a3.json", "--src", "S1", "--dst", "S1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_name_the_problem() {
    let bad = scratch("bad.json", "{\n  \"vertices\": [\"1\"],\n  \"arrows\": [\n    {\"id\": \"a\", \"src\": \"1\"}\n  ]\n}");
    let o = rexact(&["dhom", "--class", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.json:4:"), "{}", stderr(&o));
    let a3 = std::fs::read_to_string(root().join("fixtures/a3.json")).unwrap();
    let broken = a3.replace(
        r#""inflation": {"src": "P2", "dst": "P3", "blocks": {"1": [["1"]], "2": [["1"]]}}"#,
        r#""inflation": {"src": "P2", "dst": "P3", "blocks": {"1": [["0"]], "2": [["1"]]}}"#,
    );
    assert_ne!(a3, broken);
    let p = scratch("broken.json", &broken);
    let o = rexact(&["dhom", "--class", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("arrow a"), "{}", stderr(&o));
}

#[test]
fn localization_and_completion_verbs() {
    let o = rexact(&["localize", "--class", "fixtures/a3-serre-s1.json", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["zero"], serde_json::json!(["S1"]));
    let o = rexact(&["qhom", "--class", "fixtures/a3-serre-s1.json", "--src", "P2", "--dst", "S2"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = rexact(&["percolate", "--class", "fixtures/a3-serre-s1.json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = rexact(&["verdier-probe", "--class", "fixtures/a3-serre-s1.json", "--probe-budget", "12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = rexact(&["wic", "--generators", "fixtures/k4-wic.json", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["stabilized_at"], 3);
    let isos: Vec<&str> = (1..4).map(|l| v["levels"][l]["new_objects"][0]["iso"].as_str().unwrap()).collect();
    assert_eq!(isos, ["S1", "S2", "S3"]);
}
