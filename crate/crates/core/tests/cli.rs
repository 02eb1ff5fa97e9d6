mod common;

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use common::*;
use skewheyting::cli::run_with;
use skewheyting::format::parse_algebra_file;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(std::iter::once("skewheyting").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

struct Dir(PathBuf);

impl Dir {
    fn new(tag: &str) -> Dir {
        let d = std::env::temp_dir().join(format!("skewheyting-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&d).unwrap();
        Dir(d)
    }

    fn file(&self, name: &str, text: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    }
}

impl Drop for Dir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn pf22(dir: &Dir) -> String {
    let (code, text, _) = run(&["model", "pfn", "--x", "2", "--y", "2"]);
    assert_eq!(code, 0);
    dir.file("pf22.alg", &text)
}

#[test]
fn verify_pf22_passes() {
    let d = Dir::new("verify");
    let f = pf22(&d);
    let (code, out, _) = run(&["verify", &f]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("VERDICT: PASS\n"));
    assert!(!out.contains(": fails"));
    assert!(out.contains("check SH4: holds [tuples=6561]"));
}

#[test]
fn derive_chain2_arrow() {
    let d = Dir::new("derive");
    let f = d.file("chain2.alg", CHAIN2);
    let (code, out, _) = run(&["derive", &f]);
    assert_eq!(code, 0);
    assert!(out.contains("pairs: 0->0=1 0->1=1 1->0=0 1->1=1\n"), "{out}");
    assert!(out.contains("arrow:\n1 1\n0 1\n"));
}

#[test]
fn derive_emit_algebra_round_trips_through_verify() {
    let d = Dir::new("emit");
    let f = d.file("t.alg", RECT2);
    let (code, _, _) = run(&["derive", &f, "--emit-algebra"]);
    // RECT2 has no top
    assert_eq!(code, 1);
    let (code, text, _) = run(&["model", "sections", "--fibers", "2,1"]);
    assert_eq!(code, 0);
    let stripped = d.file("s.alg", &text.replace("arrow:", "#").lines().take_while(|l| *l != "#").collect::<Vec<_>>().join("\n"));
    let (code, with_arrow, _) = run(&["derive", &stripped, "--emit-algebra"]);
    assert_eq!(code, 0);
    assert!(with_arrow.contains("arrow:"));
    let g = d.file("g.alg", &with_arrow);
    let (code, out, _) = run(&["verify", &g]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn negated_search_finds_non_costrong_instance() {
    let (code, out, _) = run(&[
        "search", "--family", "enum", "--max-size", "3", "--property", "co-strongly-distributive", "--negate",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("check co-strongly-distributive: fails"));
    assert!(out.contains("witness: x="));
    let algebra: String = out
        .lines()
        .skip_while(|l| !l.starts_with("elements:"))
        .take_while(|l| !l.starts_with("VERDICT"))
        .map(|l| format!("{l}\n"))
        .collect();
    let found = parse_algebra_file(&algebra).unwrap();
    let expected = parse(RECT2_BOTTOM);
    assert!(skewheyting::algebra::find_isomorphism(&found.without_arrow(), &expected, 12)
        .unwrap()
        .is_some());
}

#[test]
fn search_without_negate() {
    let (code, out, _) = run(&["search", "--family", "pfn", "--max-size", "9", "--property", "skew-heyting"]);
    assert_eq!(code, 0);
    assert!(out.contains("found: pfn x=1 y=1"));
    let (code, out, _) = run(&["search", "--family", "pfn", "--max-size", "9", "--property", "rectangular"]);
    assert_eq!(code, 1);
    assert!(out.contains("found: none"));
    let (code, _, _) = run(&["search", "--family", "pfn", "--max-size", "9", "--property", "verify", "--negate"]);
    assert_eq!(code, 0);
}

#[test]
fn mutated_arrow_reports_sh2_witness() {
    let d = Dir::new("mutate");
    let text = CHAIN2.replace("top: 1", "arrow:\n1 1\n1 1\ntop: 1");
    let f = d.file("m.alg", &text);
    let (code, out, _) = run(&["verify", &f]);
    assert_eq!(code, 1);
    assert!(out.contains("check given-arrow: fails"));
    assert!(out.contains("check given:SH2: fails [tuples=4] witness: x=1 y=0 lhs=1 rhs=0\n"), "{out}");
    assert!(out.ends_with("VERDICT: FAIL\n"));
}

#[test]
fn check_classifies_and_requires() {
    let d = Dir::new("check");
    let f = d.file("r.alg", RECT2);
    let (code, out, _) = run(&["check", &f]);
    assert_eq!(code, 0);
    assert!(out.contains("check rectangular: holds (info)"));
    assert!(out.contains("check commutative: fails (info)"));
    let (code, _, _) = run(&["check", &f, "--require", "commutative"]);
    assert_eq!(code, 1);
    let (code, _, err) = run(&["check", &f, "--require", "nonsense"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown property"));
    let n5 = d.file("n5.alg", N5);
    let (code, out, _) = run(&["check", &n5, "--require", "distributive"]);
    assert_eq!(code, 1);
    assert!(out.contains("check distributive: fails [tuples=125] witness:"));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let d = Dir::new("parse");
    let f = d.file("bad.alg", "elements: a b c\nmeet:\na a a\na b\nc c c\n");
    let (code, out, err) = run(&["check", &f]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 4"), "{err}");
    let f = d.file("top.alg", &CHAIN2.replace("top: 1", "top: 0"));
    let (code, _, err) = run(&["check", &f]);
    assert_eq!(code, 2);
    assert!(err.contains("top"), "{err}");
    let (code, _, _) = run(&["check", "/nonexistent/file.alg"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn quotient_by_d() {
    let d = Dir::new("quotient");
    let f = pf22(&d);
    let (code, out, _) = run(&["quotient", &f, "--rel", "D"]);
    assert_eq!(code, 0);
    let q = parse_algebra_file(&out).unwrap();
    assert_eq!(q.size(), 4);
    assert!(q.is_commutative());
    let r = d.file("r.alg", RECT2);
    let (code, out, _) = run(&["quotient", &r, "--rel", "L"]);
    assert_eq!(code, 0);
    assert_eq!(parse_algebra_file(&out).unwrap().size(), 1);
}

#[test]
fn model_outputs_parse() {
    let d = Dir::new("model");
    let poset = d.file("p.pos", "points: a b\nleq:\n1 1\n0 1\n");
    for args in [
        vec!["model", "pfn", "--x", "1", "--y", "2"],
        vec!["model", "sections", "--fibers", "2,1"],
        vec!["model", "poset-sections", &poset, "--fibers", "2,2"],
        vec!["model", "upsets", &poset],
    ] {
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        parse_algebra_file(&out).unwrap();
    }
    let (_, out, _) = run(&["model", "poset-sections", &poset, "--fibers", "2,2"]);
    assert!(out.starts_with("# variant printed"));
    assert!(out.contains("# variant second-argument [s|up(dom s - dom r)]: matches\n"));
    let (code, _, _) = run(&["model", "pfn", "--x", "3", "--y", "2", "--bound", "20"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["model", "sections", "--fibers", "2,0"]);
    assert_eq!(code, 2);
}

#[test]
fn reports_are_stable_across_runs_and_jobs() {
    let d = Dir::new("stable");
    let f = pf22(&d);
    let (_, one, _) = run(&["verify", &f, "--jobs", "1"]);
    let (_, four, _) = run(&["verify", &f, "--jobs", "4"]);
    let (_, again, _) = run(&["verify", &f, "--jobs", "4"]);
    assert_eq!(one, four);
    assert_eq!(four, again);
    let r = d.file("r.alg", RECT2_BOTTOM);
    let (_, a, _) = run(&["check", &r, "--format", "machine", "--jobs", "1"]);
    let (_, b, _) = run(&["check", &r, "--format", "machine", "--jobs", "3"]);
    assert_eq!(a, b);
    assert!(a.contains("check=conormal role=classification verdict=fails tuples=81 witness=x:0,y:a,z:b,w:0"), "{a}");
    assert!(a.ends_with("verdict=PASS\n"));
}

#[test]
fn binary_reads_stdin_and_sets_status() {
    let exe = env!("CARGO_BIN_EXE_skewheyting");
    let mut child = Command::new(exe)
        .args(["check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(CHAIN2.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("input: sha256:"));
    assert!(text.ends_with("VERDICT: PASS\n"));

    let status = Command::new(exe).args(["check", "--bogus"]).output().unwrap().status;
    assert_eq!(status.code(), Some(2));
    let status = Command::new(exe).arg("--help").output().unwrap().status;
    assert_eq!(status.code(), Some(0));
}
