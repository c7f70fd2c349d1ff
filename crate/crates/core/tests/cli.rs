use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn oracles() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("oracles")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("maxzx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn maxzx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxzx")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn spec(name: &str) -> String {
    oracles().join(name).to_string_lossy().into_owned()
}

#[test]
fn run_prints_verdicts() {
    let o = maxzx(&["run", "--oracle", &spec("pg1019.oracle")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "prime: 1019\n");
    let o = maxzx(&["run", "--oracle", &spec("constant_false.oracle")]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), "not-maximal: case5 a = x\n");
}

#[test]
fn run_missing_file_is_error() {
    let o = maxzx(&["run", "--oracle", "/nonexistent/none.oracle"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_oracle_reports_location() {
    let path = scratch("bad.oracle");
    std::fs::write(&path, "kind=pg_ideal\np=3\ng=x^2 + q\n").unwrap();
    let o = maxzx(&["run", "--oracle", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn usage_error_exits_1() {
    assert_eq!(maxzx(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(maxzx(&["run"]).status.code(), Some(1));
    assert_eq!(maxzx(&["--help"]).status.code(), Some(0));
}

#[test]
fn search_counts_calls() {
    let o = maxzx(&["search", "--oracle", &spec("pg3.oracle")]);
    assert_eq!(stdout(&o), "prime: 3 (2 membership calls)\n");
    assert_eq!(o.status.code(), Some(0));
    let o = maxzx(&["search", "--oracle", &spec("pg1019.oracle")]);
    assert_eq!(stdout(&o), "prime: 1019 (171 membership calls)\n");
    let o = maxzx(&["search", "--oracle", &spec("constant_false.oracle"), "--limit", "10"]);
    assert!(stdout(&o).starts_with("none within 10"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn run_verify_round_trip() {
    let cert = scratch("pg1019.json");
    let o = maxzx(&["run", "--oracle", &spec("pg1019.oracle"), "--cert", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = maxzx(&["verify", "--oracle", &spec("pg1019.oracle"), "--cert", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("overall: pass\n"));

    // against a different oracle the replayed answers disagree
    let o = maxzx(&["verify", "--oracle", &spec("pg3.oracle"), "--cert", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("[FAIL] 1 membership replay"));
}

#[test]
fn tampered_n_names_failing_check() {
    let o = maxzx(&["run", "--oracle", &spec("pg1019.oracle"), "--json"]);
    let mut doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["N"], "-1019");
    doc["N"] = "-1018".into();
    let cert = scratch("tampered.json");
    std::fs::write(&cert, doc.to_string()).unwrap();
    let o = maxzx(&["verify", "--oracle", &spec("pg1019.oracle"), "--cert", cert.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["overall"], "fail");
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"9 combination integer"), "{failed:?}");
}

#[test]
fn malformed_certificate_exits_2() {
    let cert = scratch("garbage.json");
    std::fs::write(&cert, "{\"f\": 3").unwrap();
    let o = maxzx(&["verify", "--oracle", &spec("pg3.oracle"), "--cert", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("malformed certificate"));
}

#[test]
fn bench_shows_crossover() {
    let o = maxzx(&["bench", &spec("bench.list"), "--repeat", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let calls = |inst: &str, method: &str| {
        rows.as_array()
            .unwrap()
            .iter()
            .find(|r| r["instance"].as_str().unwrap().ends_with(inst) && r["method"] == method)
            .unwrap()["m_calls"]
            .as_u64()
            .unwrap()
    };
    assert_eq!(calls("pg3.oracle", "search"), 2);
    assert_eq!(calls("pg3.oracle", "maxzx"), 3);
    assert_eq!(calls("pg1019.oracle", "search"), 171);
    assert_eq!(calls("pg1019.oracle", "maxzx"), 12);
}

#[test]
fn bench_empty_and_bad_rows() {
    let list = scratch("empty.list");
    std::fs::write(&list, "# nothing\n").unwrap();
    let o = maxzx(&["bench", list.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[]");

    let list = scratch("mixed.list");
    std::fs::write(&list, format!("missing.oracle\n{}\n", spec("pg3.oracle"))).unwrap();
    let o = maxzx(&["bench", list.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("error:"), "{text}");
    assert!(text.contains("prime: 3"), "{text}");
}

#[test]
fn repl_session() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_maxzx"))
        .args(["repl", "--empty"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"run\nset nu x = 2\nset M 2x-1 = tt\nset M garbage = tt\nrun\nquit\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("not-maximal: case5 a = x"), "{text}");
    assert!(text.contains("error"), "{text}");
    assert!(text.contains("not-maximal: case5 a = 3"), "{text}");
}

#[test]
fn repl_matches_oracle_file_with_same_overrides() {
    let o = maxzx(&["run", "--oracle", &spec("refined.oracle"), "--json"]);
    let from_file: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();

    let mut s = maxzx::cli::Session::empty();
    s.execute("set nu x = 2");
    s.execute("set M 2x-1 = tt");
    s.execute("run");
    let cert = maxzx::evidence::serialize_certificate(&s.last_outcome().unwrap().certificate);
    let from_repl: serde_json::Value = serde_json::from_str(&cert).unwrap();
    assert_eq!(from_file, from_repl);
}
