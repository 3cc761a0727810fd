use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use twb_core::{BraidWord, Kind};

fn twb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twb")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/corpus")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn word_file(dir: &TempDir, name: &str, n: usize, letters: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, format!("n={n} category=twisted\n{letters}\n")).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn braid_unknot_is_empty_one_strand_word() {
    let o = twb(&["braid", &corpus("unknot.morse")]);
    assert_eq!(code(&o), 0);
    let w = BraidWord::from_file_str(&stdout(&o)).unwrap();
    assert_eq!((w.n(), w.len()), (1, 0));
}

#[test]
fn braid_example_keeps_counts_and_writes_trace() {
    let dir = TempDir::new().unwrap();
    let trace = dir.path().join("trace.jsonl");
    let out = dir.path().join("example.braid");
    let o = twb(&["braid", &corpus("example_up_arcs.morse"), "--trace", s(&trace), "-o", s(&out)]);
    assert_eq!(code(&o), 0);
    let w = BraidWord::from_file_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(w.sigma_count(), 3);
    assert_eq!(w.count(Kind::B), 4);
    let steps: Vec<serde_json::Value> =
        fs::read_to_string(&trace).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!steps.is_empty());
    for (k, step) in steps.iter().enumerate() {
        assert_eq!(step["step"], k + 1);
        assert!(step["letters"].is_string());
    }
    let eliminated = steps.iter().filter(|s| s["kind"] != "skeleton").count();
    assert_eq!(eliminated, 6);
}

#[test]
fn braid_then_close_keeps_the_trefoil_code() {
    let dir = TempDir::new().unwrap();
    let word = dir.path().join("t.braid");
    let closed = dir.path().join("t.morse");
    assert_eq!(code(&twb(&["braid", &corpus("trefoil.morse"), "-o", s(&word)])), 0);
    assert_eq!(code(&twb(&["close", s(&word), "-o", s(&closed)])), 0);
    let o = twb(&["gauss-eq", s(&closed), &corpus("trefoil.morse")]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "equal\n"));
    let o = twb(&["gauss-eq", &corpus("unknot.morse"), &corpus("trefoil.morse")]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "different\n"));
}

#[test]
fn close_small_words() {
    let dir = TempDir::new().unwrap();
    let o = twb(&["close", s(&word_file(&dir, "e", 1, ""))]);
    assert_eq!(stdout(&o), fs::read_to_string(corpus("unknot.morse")).unwrap());
    let bar = dir.path().join("bar.morse");
    twb(&["close", s(&word_file(&dir, "b", 1, "b1")), "-o", s(&bar)]);
    assert_eq!(stdout(&twb(&["gauss", s(&bar)])), "b\n");
}

#[test]
fn reduce_and_expand() {
    let dir = TempDir::new().unwrap();
    let o = twb(&["reduce", s(&word_file(&dir, "w", 3, "b1 s2 v1 v1 S2 b1"))]);
    assert_eq!(stdout(&o), "n=3 category=twisted\n\n");
    let o = twb(&["expand", s(&word_file(&dir, "x", 3, "S2"))]);
    assert_eq!(stdout(&o), "n=3 category=twisted\nv1 v2 S1 v2 v1\n");
}

#[test]
fn verify_presentation_small_cases() {
    for family in ["TB_reduced", "FT_reduced"] {
        let o = twb(&["verify-presentation", family, "3"]);
        assert_eq!(code(&o), 0, "{family}");
        assert!(!stdout(&o).contains("Unknown"));
    }
    let o = twb(&["verify-presentation", "TB_reduced", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l.starts_with("Proved twisted.inv[2] ")));
    assert_eq!(code(&twb(&["verify-presentation", "VB_reduced", "3"])), 2);
}

#[test]
fn invariant_reports() {
    let dir = TempDir::new().unwrap();
    let o = stdout(&twb(&["invariants", s(&word_file(&dir, "e", 3, ""))]));
    assert!(o.contains("image: perm=[1 2 3] signs=+++"));
    assert!(o.contains("exponent sum: 0"));
    assert!(o.contains("components: 3"));
    let o = stdout(&twb(&["invariants", s(&word_file(&dir, "b", 1, "b1"))]));
    assert!(o.contains("signs=-"));
    assert!(o.contains("parity 1"));
    let a = stdout(&twb(&["invariants", s(&word_file(&dir, "a", 2, "v1 s1 v1"))]));
    let b = stdout(&twb(&["invariants", s(&word_file(&dir, "c", 2, "b1 b2 s1 b2 b1"))]));
    assert_eq!(a, b);
}

#[test]
fn markov_exit_codes() {
    let dir = TempDir::new().unwrap();
    let s1 = word_file(&dir, "s1", 2, "s1");
    let o = twb(&["markov-eq", s(&s1), s(&word_file(&dir, "e1", 1, ""))]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("equal in 1 moves"));
    // different component counts can never meet; a tiny budget gives up quickly
    let o = Command::new(env!("CARGO_BIN_EXE_twb"))
        .args(["markov-eq", s(&s1), s(&word_file(&dir, "e2", 2, ""))])
        .env("TWB_MAX_NODES", "200")
        .output()
        .unwrap();
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "unknown\n"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&twb(&["braid", "/nonexistent.morse"])), 2);
    let bad = dir.path().join("bad.morse");
    fs::write(&bad, "morse category=twisted\ncup 1 ccw\n").unwrap();
    assert_eq!(code(&twb(&["gauss", s(&bad)])), 2);
    let w = word_file(&dir, "w", 2, "s1");
    assert_eq!(code(&twb(&["reduce", s(&w), "--category", "flat-twisted"])), 2);
}
