use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypercycle"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("report is JSON")
}

#[test]
fn every_golden_report_is_reproduced() {
    let dir = fixtures().join("golden");
    let mut count = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap();
        let stem = name.strip_suffix(".json").unwrap();
        let (fixture, command) = stem.split_once('.').unwrap();
        let input = fixtures().join(format!("{fixture}.json"));
        let input = input.to_str().unwrap();
        let out = match command.strip_prefix("gram-truncate-") {
            Some(k) => run(&["gram", "--truncate", k, input]),
            None => run(&[command, input]),
        };
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(stdout(&out), std::fs::read_to_string(&path).unwrap(), "{name}");
        count += 1;
    }
    assert!(count > 50);
}

#[test]
fn fixture_corpus_verifies() {
    let mut paths: Vec<String> = std::fs::read_dir(fixtures())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| p.to_str().unwrap().to_string())
        .collect();
    paths.sort();
    let mut args = vec!["verify"];
    args.extend(paths.iter().map(String::as_str));
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["verify"]["failed"], 0);
}

#[test]
fn tampered_delta_exits_three() {
    let text = std::fs::read_to_string(fixtures().join("alg_cycle.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["expected"]["delta"] = 0.into();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tampered.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("delta"));
    assert_eq!(json(&out)["verify"]["failed"], 1);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("malformed.json", "{"),
        ("tag.json", r#"{"vertices":["a"],"edges":[{"type":"loop","members":["a"]}]}"#),
        ("vertex.json", r#"{"vertices":["a"],"edges":[{"type":"directed","source":"a","target":"b"}]}"#),
        ("field.json", r#"{"field":"F4","vertices":["a"],"edges":[]}"#),
    ];
    for (name, text) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        let out = run(&["analyze", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
    }
    let missing = run(&["analyze", "/nonexistent/instance.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let triangle = fixtures().join("triangle_f2.json");
    assert_eq!(run(&["gram", triangle.to_str().unwrap()]).status.code(), Some(2));
    let import = run(&["import-oh", fixtures().join("triangle.json").to_str().unwrap()]);
    assert_eq!(import.status.code(), Some(2));
}

#[test]
fn field_override_and_output_file() {
    let alg = fixtures().join("alg_cycle.json");
    let out = run(&["--field", "F2", "analyze", alg.to_str().unwrap()]);
    let r = json(&out);
    assert_eq!(r["instance"]["field"], "F2");
    assert_eq!(r["analysis"]["v_macro"], 2);

    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = run(&["analyze", alg.to_str().unwrap(), "--output", target.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(written["analysis"]["delta"], 1);
}

#[test]
fn imported_instance_round_trips() {
    let out = run(&["import-oh", fixtures().join("oh_defect.json").to_str().unwrap()]);
    let r = json(&out);
    assert_eq!(r["import"]["kernel_match"], true);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("converted.json");
    std::fs::write(&path, r["import"]["converted"].to_string()).unwrap();
    let again = json(&run(&["basis", path.to_str().unwrap()]));
    assert_eq!(again["analysis"], r["analysis"]);
    assert_eq!(again["basis"]["lifted"], serde_json::json!([["1", "-1", "-1", "1"]]));
}

#[test]
fn dense_incidence_matches_oriented_edges() {
    let text = r#"{"vertices":["a","b","c","d"],"incidence":[
        [0,1,0,1],[0,0,1,1],[1,1,1,1],[-1,-1,-1,-1]]}"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dense.json");
    std::fs::write(&path, text).unwrap();
    let dense = json(&run(&["analyze", path.to_str().unwrap()]));
    let sides = json(&run(&["analyze", fixtures().join("oh_defect.json").to_str().unwrap()]));
    assert_eq!(dense["analysis"], sides["analysis"]);
}

#[test]
fn random_verification_is_byte_identical() {
    let a = run(&["--field", "F2", "verify", "--random", "60", "--seed", "9"]);
    let b = run(&["--field", "F2", "verify", "--random", "60", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["--field", "F2", "verify", "--random", "60", "--seed", "10"]);
    assert_ne!(a.stdout, c.stdout);
}
