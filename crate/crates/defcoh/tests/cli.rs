use std::path::Path;
use std::process::{Command, Output};

fn defcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defcoh")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn passing_run_exits_zero_and_reports_betti() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(
        dir.path(),
        "job.json",
        r#"{"kind": "twovect", "partial": [["1", "0"], ["0", "0"]], "checks": ["closed_form"]}"#,
    );
    let out = defcoh(&["run", &job, "--format", "tree"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let betti: Vec<u64> = report["jobs"][0]["cohomology"][0]["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["betti"].as_u64().unwrap())
        .collect();
    assert_eq!(betti, vec![1, 2, 1, 0]);
    assert_eq!(report["jobs"][0]["checks"][0]["passed"], true);
    assert!(report["jobs"][0].get("elapsed_ms").is_none());
}

#[test]
fn injected_mutation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(
        dir.path(),
        "job.json",
        r#"{"kind": "twovect", "partial": [["1"]], "mutation": {"degree": 0, "row": 0, "col": 0}}"#,
    );
    let out = defcoh(&["verify", &job]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("oracle_match FAIL"), "{text}");
    assert!(text.ends_with("FAIL\n"));
}

#[test]
fn malformed_documents_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("syntax.json", "{"),
        ("schema.json", r#"{"kind": "twovect", "partial": [[1]]}"#),
        ("cap.json", r#"{"kind": "twovect", "partial": [["1"]], "kmax": 99}"#),
    ] {
        let job = write(dir.path(), name, text);
        let out = defcoh(&["run", &job]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
    let out = defcoh(&["run", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(
        dir.path(),
        "job.json",
        r#"{"kind": "group", "field": "F2", "group": {"preset": "cyclic", "n": 2}, "kmax": 4, "checks": ["betti"]}"#,
    );
    let target = dir.path().join("report.txt");
    let out = defcoh(&["run", &job, "--format", "table", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let table = std::fs::read_to_string(&target).unwrap();
    let line = table.lines().find(|l| l.trim_start().starts_with("H(bar)")).unwrap();
    let betti: Vec<&str> = line.split_whitespace().skip(1).collect();
    assert_eq!(betti, ["1", "1", "1", "1", "1"]);
}

#[test]
fn default_output_has_table_then_tree() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(dir.path(), "job.json", r#"{"kind": "twovect", "partial": [["2"]], "checks": ["betti"]}"#);
    let text = String::from_utf8(defcoh(&["run", &job]).stdout).unwrap();
    let brace = text.find("\n{").unwrap();
    assert!(text[..brace].starts_with("defcoh "));
    serde_json::from_str::<serde_json::Value>(&text[brace..]).unwrap();
}

#[test]
fn timing_is_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(dir.path(), "job.json", r#"{"kind": "twovect", "partial": [["2"]], "checks": ["betti"]}"#);
    let out = defcoh(&["run", &job, "--format", "tree", "--timing"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["jobs"][0]["elapsed_ms"].is_u64());
}

#[test]
fn schema_is_json() {
    let out = defcoh(&["schema"]);
    assert_eq!(out.status.code(), Some(0));
    let schema: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(schema["x-limits"]["kmax"], 6);
}

#[test]
fn verify_tree_omits_cohomology() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(dir.path(), "job.json", r#"{"kind": "twovect", "partial": [["1", "1"]]}"#);
    let out = defcoh(&["verify", &job, "--format", "tree"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["jobs"][0]["cohomology"].as_array().unwrap().len(), 0);
    assert_eq!(report["jobs"][0]["checks"].as_array().unwrap().len(), 7);
}
