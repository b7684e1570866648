use std::process::Command;

use classgraph_cli::{reserialize, run, PairJson, EXIT_CONFIG, EXIT_FAIL, EXIT_OK};

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["classgraph"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write_fixture(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(format!("{name}.json"));
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const S3_FILE: &str = r#"{"name": "s3", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}"#;

#[test]
fn analyze_gl23_json() {
    let (code, out, _) = cli(&["analyze", "--group", "builtin:gl23", "--normal", "order:24", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let doc: PairJson = serde_json::from_str(&out).unwrap();
    assert_eq!(doc.class_sizes, vec![1, 1, 6, 8, 8]);
    assert_eq!(doc.shape, "Triangle");
    assert!(out.trim_start().starts_with("{\n  \"class_sizes\""));
}

#[test]
fn analyze_abelian_group_gives_empty_graphs() {
    let (code, out, _) = cli(&["analyze", "--group", "builtin:cyclic:6", "--normal", "all", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<PairJson> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert_eq!(r.shape, "Empty");
        for c in r.checks.iter().filter(|c| !c.theorem.starts_with("cp-") && !c.theorem.starts_with("prime-")) {
            assert_eq!(c.verdict, classgraph::theorems::Verdict::NotApplicable, "{}", c.theorem);
        }
    }
}

#[test]
fn json_outputs_round_trip_byte_identically() {
    for args in [
        vec!["analyze", "--group", "gl23", "--normal", "order:24", "--format", "json"],
        vec!["analyze", "--group", "symmetric:4", "--format", "json"],
        vec!["analyze", "--group", "example:ex12", "--normal", "name:N", "--format", "json"],
        vec!["audit", "--group", "sl23*cyclic:2", "--format", "json"],
        vec!["repro-paper", "--format", "json"],
    ] {
        let (_, out, _) = cli(&args);
        assert_eq!(reserialize(&out).unwrap(), out, "{args:?}");
    }
}

#[test]
fn dot_output_is_stable() {
    let (code, out, _) = cli(&["analyze", "--group", "gl23", "--normal", "order:24", "--format", "dot"]);
    assert_eq!(code, EXIT_OK);
    let expected = "graph \"gl23 / order:24\" {\n  \"C2:6\";\n  \"C3:8\";\n  \"C4:8\";\n  \"C2:6\" -- \"C3:8\";\n  \"C2:6\" -- \"C4:8\";\n  \"C3:8\" -- \"C4:8\";\n}\n";
    assert_eq!(out, expected);
}

#[test]
fn expected_sizes_decide_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(&dir, "s3", S3_FILE);
    let (code, _, _) = cli(&["analyze", "--group", &path, "--normal", "whole", "--expect", "1,2,3"]);
    assert_eq!(code, EXIT_OK);
    let (code, _, err) = cli(&["analyze", "--group", &path, "--normal", "whole", "--expect", "1,3,2,1"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(err.contains("differ"));
    let (code, _, _) = cli(&["analyze", "--group", &path, "--normal", "all", "--expect", "1,2,3"]);
    assert_eq!(code, EXIT_CONFIG);
}

#[test]
fn fixtures_dir_resolves_names() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture(&dir, "tiny", S3_FILE);
    let d = dir.path().to_str().unwrap();
    let (code, out, _) = cli(&["analyze", "--group", "tiny", "--normal", "order:3", "--fixtures-dir", d]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("class sizes: [1, 2]"), "{out}");
}

#[test]
fn configuration_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_images = write_fixture(&dir, "bad", r#"{"name": "bad", "degree": 3, "generators": [[0, 0, 1]]}"#);
    let not_json = write_fixture(&dir, "junk", "this is not json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["analyze", "--group", "cyclic"],
        vec!["analyze", "--group", "nonsense:4"],
        vec!["analyze", "--group", "gl23", "--normal", "order:7"],
        vec!["analyze", "--group", "gl23", "--normal", "largest"],
        vec!["analyze", "--group", "gl23", "--normal", "index:99"],
        vec!["analyze", "--group", &bad_images],
        vec!["analyze", "--group", &not_json],
        vec!["analyze", "--group", "file:/does/not/exist.json"],
        vec!["analyze"],
        vec!["frobnicate"],
        vec!["scan", "--format", "yaml"],
        vec!["audit", "--fixtures-dir", "/does/not/exist"],
    ];
    for args in cases {
        let (code, _, err) = cli(&args);
        assert_eq!(code, EXIT_CONFIG, "{args:?}: {err}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn repro_mismatch_exits_1() {
    // one catalog entry has no group with the stated parameters
    let (code, out, _) = cli(&["repro-paper"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("ERROR"));
    assert!(out.contains("MATCH"));
}

#[test]
fn audit_of_a_passing_fixture_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(&dir, "s3", S3_FILE);
    let (code, out, _) = cli(&["audit", "--group", &path]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("1 groups, 2 (G, N) pairs"), "{out}");
}

#[test]
fn scan_lists_fingerprints() {
    let (code, out, _) = cli(&["scan", "--max-order", "12"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("family:cyclic:12"));
    assert!(out.lines().last().unwrap().ends_with("groups"));
}

#[test]
fn help_exits_0() {
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("NORMAL SELECTORS"));
}

#[test]
fn enumeration_cap_comes_from_the_environment() {
    let bin = env!("CARGO_BIN_EXE_classgraph");
    let status = Command::new(bin)
        .args(["analyze", "--group", "symmetric:5", "--normal", "whole"])
        .env("CLASSGRAPH_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_CONFIG));
    assert!(String::from_utf8_lossy(&status.stderr).contains("cap"));
    let status = Command::new(bin)
        .args(["analyze", "--group", "symmetric:5", "--normal", "whole"])
        .env("CLASSGRAPH_CAP", "500")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
}
