mod common;

use std::fs;
use std::path::{Path, PathBuf};

use common::*;
use lpmln_core::cli::{main_with, CheckReport};
use lpmln_core::equiv::check_strong;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["lpmln"];
    argv.extend_from_slice(args);
    let code = main_with(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn strong_check_reports_constant() {
    let dir = tempfile::tempdir().unwrap();
    let (f, g) = (write(dir.path(), "F.lpmln", F), write(dir.path(), "G.lpmln", G));
    let r = run(&["check-strong", s(&f), s(&g)]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.starts_with("strongly equivalent, c = e^2"), "{}", r.out);

    let fp = write(dir.path(), "Fp.lpmln", F_PRIME);
    let r = run(&["check-strong", s(&fp), s(&g)]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("X = {a, b}"), "{}", r.out);
}

#[test]
fn json_verdict_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (f, g) = (write(dir.path(), "F.lpmln", F), write(dir.path(), "G.lpmln", G_PRIME));
    let r = run(&["check-strong", s(&f), s(&g), "--json", "--trials", "20", "--seed", "3"]);
    assert_eq!(r.code, 1);
    let report: CheckReport = serde_json::from_str(&r.out).unwrap();
    assert_eq!(report.verdict, check_strong(&prog(F), &prog(G_PRIME)).unwrap());
    assert_eq!(report.witness_x, Some(vec!["a".to_string()]));
}

#[test]
fn structural_methods_from_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let (f, g) = (write(dir.path(), "F.lpmln", EX1_F), write(dir.path(), "G.lpmln", EX1_G));
    for method in ["reduct", "choice", "ht", "delta-x", "delta-choice", "all"] {
        let r = run(&["check-structural", s(&f), s(&g), "--method", method]);
        assert_eq!(r.code, 1, "{method}");
        assert!(r.out.contains("X = {a, b}"), "{method}: {}", r.out);
    }
    let r = run(&["check-weak", s(&f), s(&g)]);
    assert_eq!(r.code, 0);
}

#[test]
fn single_program_reports() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "E.lpmln", EX1_F);
    let r = run(&["prob", s(&p)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.lines().count(), 3);
    assert!(r.out.contains("P({a}) = exp(3)/(exp(1) + exp(3) + exp(3))"));
    let r = run(&["models", s(&p)]);
    assert_eq!(r.out.lines().count(), 3);

    let f = write(dir.path(), "F.lpmln", F);
    let r = run(&["ht", s(&f)]);
    let marks: Vec<&str> = r.out.lines().map(|l| l.rsplit(' ').next().unwrap()).collect();
    assert_eq!(marks, ["Yes", "No", "Yes", "Yes", "Yes", "No", "No", "No", "Yes"]);
    let r = run(&["prob", s(&p), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["models"].as_array().unwrap().len(), 3);
}

#[test]
fn errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.lpmln", "1 : a &.");
    let r = run(&["models", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("syntax error at 1:8"), "{}", r.err);
    let r = run(&["models", s(&dir.path().join("missing.lpmln"))]);
    assert_eq!(r.code, 2);
    let wide = write(dir.path(), "wide.lpmln", "1 : a | b | c.");
    let r = run(&["models", s(&wide), "--max-atoms", "2"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("--max-atoms"));
    assert_eq!(run(&["models", s(&wide), "--max-atoms", "3"]).code, 0);
    assert_eq!(run(&["check-strong", s(&wide)]).code, 2);
}

#[test]
fn emission_files_and_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let (f, g) = (write(dir.path(), "F.lpmln", F), write(dir.path(), "G.lpmln", G));
    let out = dir.path().join("asp");
    let r = run(&["emit-asp", s(&f), s(&g), "--emit-dir", s(&out)]);
    assert_eq!(r.code, 0, "{}", r.err);
    for suffix in ["P", "Pstar_soft", "Pstar_hard", "P1ss", "P2ss"] {
        assert!(out.join(format!("F_G.{suffix}.lp")).exists(), "{suffix}");
    }
    assert!(r.out.contains("Pstar_soft no answer set"));
    let r = run(&["emit-asp", s(&f), s(&g), "--stdout", "--pair", "fg"]);
    assert_eq!(r.out.matches("%%% file: fg.").count(), 5);
}
