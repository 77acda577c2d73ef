use std::fs;
use std::process::{Command, Output};

use hilbcover_core::corpus::{c12, read_cone_file};

fn hilbcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbcover")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn icp_on_c10_reports_the_failure_ratio() {
    let o = hilbcover(&["icp", "corpus:c10"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("verdict not covered\n"), "{out}");
    assert!(out.contains("ratio 32/15552"), "{out}");
    assert!(out.contains("aggregate_ratio 1/486"), "{out}");
}

#[test]
fn info_on_c12_counts_supports() {
    let o = hilbcover(&["info", "corpus:c12"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "#Supp 39"), "{out}");
    assert!(out.lines().any(|l| l == "#Hilb 12"), "{out}");
}

#[test]
fn quiet_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unimodular.cone");
    fs::write(&path, "# the positive orthant\n3 3\n1 0 0\n0 1 0\n0 0 1\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(hilbcover(&["uhc", p, "--quiet"]).status.code(), Some(0));
    assert_eq!(hilbcover(&["icp", p, "--quiet"]).status.code(), Some(0));
    let o = hilbcover(&["uhc", "corpus:c10", "--quiet"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
}

#[test]
fn quiet_agrees_with_the_long_report_on_the_corpus() {
    for name in ["corpus:c10", "corpus:c12", "corpus:c12p", "corpus:c15"] {
        for property in ["uhc", "icp"] {
            let long = stdout(&hilbcover(&[property, name]));
            let covered = long.starts_with("verdict covered\n");
            let quiet = hilbcover(&[property, name, "--quiet"]);
            assert_eq!(quiet.status.code(), Some(if covered { 0 } else { 1 }), "{property} {name}");
        }
    }
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(hilbcover(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hilbcover(&["icp"]).status.code(), Some(2));
    assert_eq!(hilbcover(&["info", "corpus:nope"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cone");
    fs::write(&path, "2 2\n1 0\n1 x\n").unwrap();
    let o = hilbcover(&["info", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(hilbcover(&["info", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn exhausted_budgets_exit_3() {
    assert_eq!(hilbcover(&["uhc", "corpus:c10", "--max-regions", "1"]).status.code(), Some(3));
    assert_eq!(hilbcover(&["icp", "corpus:c10", "--residue-budget", "2"]).status.code(), Some(3));
}

#[test]
fn corpus_writes_a_readable_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c12.cone");
    let o = hilbcover(&["corpus", "c12", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_cone_file(&path).unwrap().matrix, c12().generators);
    let info = stdout(&hilbcover(&["info", path.to_str().unwrap()]));
    assert!(info.lines().any(|l| l == "#Supp 39"), "{info}");
}

#[test]
fn hilbert_output_is_a_cone_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.cone");
    let o = hilbcover(&["hilbert", "corpus:c10", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_cone_file(&path).unwrap().matrix.nrows(), 10);
}

#[test]
fn sampling_is_deterministic() {
    let args = ["mc", "corpus:c10", "--samples", "5000", "--mc-seed", "7"];
    let a = hilbcover(&args);
    assert_eq!(a.status.code(), Some(0));
    let mut single = vec!["--threads", "1"];
    single.extend(args);
    let b = hilbcover(&single);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("certified true"));
}

#[test]
fn search_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("hits.jsonl");
    let args = ["search", "--mode", "parallelotope", "--dim", "5", "--seed", "3", "--candidates", "10", "--no-uhc"];
    let a = hilbcover(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let mut single = vec!["--threads", "1"];
    single.extend(args);
    single.extend(["--output", log.to_str().unwrap()]);
    let b = hilbcover(&single);
    assert_eq!(stdout(&a), stdout(&b));
    let hits = hilbcover_core::corpus::read_hits(&log).unwrap();
    let hit_lines = stdout(&a).lines().filter(|l| l.starts_with("hit")).count();
    assert!(hit_lines > 0);
    assert_eq!(hits.len(), hit_lines);
}
