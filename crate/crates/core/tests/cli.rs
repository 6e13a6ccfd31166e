mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use embedjoin::pinned::WORKED_EXAMPLE;
use serde_json::Value;
use tempfile::TempDir;

use common::EXAMPLE_LINES;

fn embedjoin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_embedjoin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = embedjoin(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn write_example(dir: &TempDir) -> (String, String) {
    let corpus = path(dir, "example.txt");
    fs::write(&corpus, EXAMPLE_LINES.join("\n") + "\n").unwrap();
    let scheme = path(dir, "scheme.json");
    fs::write(&scheme, WORKED_EXAMPLE).unwrap();
    (corpus, scheme)
}

fn read_json(p: impl AsRef<Path>) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn pinned_worked_example() {
    let dir = TempDir::new().unwrap();
    let (corpus, scheme) = write_example(&dir);
    let metrics = path(&dir, "m.json");
    let out = ok(&[
        "join",
        "-k",
        "3",
        "-r",
        "2",
        "-z",
        "2",
        "-m",
        "2",
        "--seed",
        "11",
        "-i",
        &corpus,
        "--pin-scheme",
        &scheme,
        "--metrics",
        &metrics,
    ]);
    assert_eq!(out, "0\t1\t2\n0\t2\t3\n");
    let m = read_json(&metrics);
    assert_eq!(m["pairs_verified"], 3);
    assert_eq!(m["pairs_output"], 2);
    assert_eq!(m["resolved_config"]["truncation"], 10);
}

#[test]
fn eval_identical_files() {
    let dir = TempDir::new().unwrap();
    let pairs = path(&dir, "p.tsv");
    fs::write(&pairs, "0\t1\t2\n0\t2\t3\n").unwrap();
    let m: Value =
        serde_json::from_str(&ok(&["eval", "--result", &pairs, "--truth", &pairs])).unwrap();
    assert_eq!(m["recall"], 1.0);
    assert_eq!(m["precision"], 1.0);
}

#[test]
fn full_pipeline_recall() {
    let dir = TempDir::new().unwrap();
    let corpus = path(&dir, "corpus.txt");
    let truth = path(&dir, "truth.tsv");
    let result = path(&dir, "result.tsv");
    let metrics = path(&dir, "metrics.json");
    ok(&[
        "gen",
        "--n-base",
        "500",
        "--dup",
        "1",
        "--len",
        "1000",
        "--max-edits",
        "10",
        "--max-shift",
        "8",
        "--seed",
        "3",
        "-o",
        &corpus,
    ]);
    ok(&["oracle", "-k", "20", "-i", &corpus, "-o", &truth]);
    ok(&[
        "join",
        "-k",
        "20",
        "--seed",
        "3",
        "-i",
        &corpus,
        "-o",
        &result,
        "--metrics",
        &metrics,
        "--truth",
        &truth,
    ]);
    let m: Value = serde_json::from_str(&ok(&[
        "eval", "--result", &result, "--truth", &truth, "-i", &corpus,
    ]))
    .unwrap();
    assert_eq!(m["precision"], 1.0);
    assert!(m["recall"].as_f64().unwrap() >= 0.90, "{m}");
    let joined = read_json(&metrics);
    assert_eq!(joined["recall"], m["recall"]);
    let cfg = &joined["resolved_config"];
    for key in [
        "threshold",
        "reps",
        "tables",
        "bits",
        "delta",
        "match_threshold",
        "truncation",
        "mode",
    ] {
        assert!(!cfg[key].is_null(), "missing {key}");
    }
    assert_eq!(cfg["reps"], 7);
    assert_eq!(cfg["mode"], "basic");
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let corpus = path(&dir, "corpus.txt");
    ok(&[
        "gen",
        "--n-base",
        "80",
        "--len",
        "200",
        "--max-edits",
        "5",
        "--max-shift",
        "5",
        "--seed",
        "9",
        "-o",
        &corpus,
    ]);
    let run = |threads: &str| {
        ok(&[
            "--threads",
            threads,
            "join",
            "-k",
            "10",
            "--seed",
            "5",
            "-i",
            &corpus,
        ])
    };
    let first = run("1");
    assert!(!first.is_empty());
    assert_eq!(first, run("1"));
    assert_eq!(first, run("3"));
}

#[test]
fn gen_writes_truth_within_budget() {
    let dir = TempDir::new().unwrap();
    let corpus = path(&dir, "corpus.txt");
    let truth = path(&dir, "truth.tsv");
    ok(&[
        "gen",
        "--n-base",
        "30",
        "--dup",
        "2",
        "--len",
        "50",
        "--max-edits",
        "3",
        "--max-shift",
        "2",
        "-o",
        &corpus,
        "--truth",
        &truth,
    ]);
    assert_eq!(fs::read_to_string(&corpus).unwrap().lines().count(), 90);
    let planted = fs::read_to_string(&truth).unwrap();
    assert_eq!(planted.lines().count(), 60);
    for line in planted.lines() {
        let d: usize = line.split('\t').nth(2).unwrap().parse().unwrap();
        assert!(d <= 5);
    }
}

#[test]
fn analysis_csv_headers() {
    let distort = ok(&[
        "distort",
        "--pairs",
        "5",
        "--len",
        "50",
        "--max-edits",
        "3",
        "-r",
        "2",
    ]);
    let mut lines = distort.lines();
    assert_eq!(lines.next(), Some("pair_id,distortion"));
    assert_eq!(lines.count(), 5);

    let probe = ok(&[
        "probe",
        "--trials",
        "2",
        "--len",
        "60",
        "-k",
        "10",
        "--max-shift",
        "5",
    ]);
    assert!(probe.starts_with("trial,kind,length,min_normalized_hamming\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(embedjoin(&["join"]).status.code(), Some(2));
    assert_eq!(embedjoin(&["frobnicate"]).status.code(), Some(2));
    let missing = embedjoin(&["join", "-k", "3", "-i", "/nonexistent/corpus.txt"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(!missing.stderr.is_empty());

    let dir = TempDir::new().unwrap();
    let (corpus, _) = write_example(&dir);
    let bad = embedjoin(&["join", "-k", "3", "-z", "2", "-t", "3", "-i", &corpus]);
    assert_eq!(bad.status.code(), Some(1));
    let empty = path(&dir, "empty.txt");
    fs::write(&empty, "").unwrap();
    assert_eq!(
        embedjoin(&["join", "-k", "3", "-i", &empty]).status.code(),
        Some(1)
    );
}
