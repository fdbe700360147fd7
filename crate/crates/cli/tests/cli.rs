use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use tfchrom::{canonical_key, graph6, Graph};

fn tfchrom(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tfchrom"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn temp_file(tag: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("tfchrom-cli-{}-{tag}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn extend_from_c5_gives_grotzsch() {
    let hosts = temp_file("c5.g6", &(graph6::encode(&Graph::cycle(5)) + "\n"));
    let out = tfchrom(&["extend", "--k", "4", "--n", "11", "--d", "5", "--hosts", hosts.to_str().unwrap()], "");
    std::fs::remove_file(&hosts).ok();
    assert!(out.status.success(), "{}", stderr(&out));
    let graphs = graph6::read_all(out.stdout.as_slice()).unwrap();
    assert_eq!(graphs.len(), 1);
    assert_eq!(canonical_key(&graphs[0]), canonical_key(&Graph::cycle(5).mycielski()));
    assert!(stderr(&out).contains("case d=5"));
}

#[test]
fn verify_checks_the_fixtures() {
    let out = tfchrom(&["verify"], "");
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.lines().count() >= 2);
    assert!(text.lines().all(|l| l.ends_with(" ok")), "{text}");
}

#[test]
fn verify_rejects_a_wrong_claim() {
    let out = tfchrom(&["verify", "--k", "4"], &(graph6::encode(&Graph::cycle(5)) + "\n"));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("tfchrom: "));
}

#[test]
fn invalid_configurations_exit_with_two() {
    for args in [
        vec!["--workers", "0", "canon"],
        vec!["extend", "--k", "4", "--n", "12", "--d", "3"],
        vec!["extend", "--k", "4", "--n", "12", "--girth", "6"],
        vec!["certify-lower-bound", "--k", "4", "--n", "9", "--assume-none", "nonsense"],
    ] {
        let out = tfchrom(&args, "");
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).starts_with("tfchrom: "), "{args:?}");
    }
}

#[test]
fn malformed_graph6_exits_with_one() {
    let out = tfchrom(&["canon"], "D??\n!!\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line"), "{}", stderr(&out));
}

#[test]
fn canon_deduplicates() {
    let c5 = Graph::cycle(5);
    let input = [c5.clone(), c5.relabel(&[2, 4, 1, 3, 0]), Graph::path(5)]
        .iter()
        .map(|g| graph6::encode(g) + "\n")
        .collect::<String>();
    let out = tfchrom(&["canon"], &input);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn records_are_json() {
    let input = graph6::encode(&Graph::grotzsch()) + "\n";
    let out = tfchrom(&["classify", "--k", "4", "--format", "records"], &input);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["n"], 11);
    assert_eq!(v["is_critical"], true);
    assert_eq!(v["aut_order"], "10");
}

#[test]
fn output_and_report_files() {
    let dir = std::env::temp_dir();
    let out_path = dir.join(format!("tfchrom-cli-{}-out.g6", std::process::id()));
    let report_path = dir.join(format!("tfchrom-cli-{}-report.txt", std::process::id()));
    let out = tfchrom(
        &[
            "gen-mtf",
            "--n",
            "11",
            "--chromatic",
            "4",
            "-o",
            out_path.to_str().unwrap(),
            "--report",
            report_path.to_str().unwrap(),
        ],
        "",
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let graphs = graph6::read_all(std::fs::read(&out_path).unwrap().as_slice()).unwrap();
    let report = std::fs::read_to_string(&report_path).unwrap();
    std::fs::remove_file(&out_path).ok();
    std::fs::remove_file(&report_path).ok();
    assert_eq!(graphs.len(), 1);
    assert!(report.contains("count="), "{report}");
}
