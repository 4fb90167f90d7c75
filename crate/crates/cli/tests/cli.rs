use std::path::Path;
use std::process::Command;

use polyresolve::cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use polyresolve::io::{read_certificate, read_graph, read_instance, Certificate, ReportFile};
use polyresolve_core::oddcover::check_cover;
use polyresolve_core::perm::check_resolution;
use tempfile::TempDir;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("polyresolve").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn p(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn report(path: &str) -> ReportFile {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn exact_diameter_of_four_pairs() {
    let (code, out, _) = call(&["diameter", "--exact", "--shape", "2,2,2,2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "3");
}

#[test]
fn diameter_bounds_without_exact() {
    let (code, out, _) = call(&["diameter", "--shape", "3,3,3,3,3,3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "lower 4\nupper 5\n");
}

#[test]
fn exact_diameter_respects_cap() {
    let (code, _, err) = call(&["diameter", "--exact", "--shape", "3,3,3", "--cap", "10"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("error"));
}

#[test]
fn resolve_then_verify() {
    let dir = TempDir::new().unwrap();
    let (inst, cert, dot, rep) = (
        p(&dir, "i.json"),
        p(&dir, "c.json"),
        p(&dir, "g.dot"),
        p(&dir, "r.json"),
    );
    assert_eq!(
        call(&["gen", "--family", "random", "--seed", "7", "--out", &inst]).0,
        EXIT_OK
    );
    assert_eq!(
        call(&["resolve", "--instance", &inst, "--out", &cert, "--dot", &dot]).0,
        EXIT_OK
    );
    let i = read_instance(Path::new(&inst)).unwrap();
    let Certificate::Resolution(taus) = read_certificate(Path::new(&cert)).unwrap() else {
        panic!("expected a resolution");
    };
    check_resolution(&i.p, &i.q, &taus).unwrap();
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    assert_eq!(
        call(&["verify", "--instance", &inst, "--cert", &cert, "--out", &rep]).0,
        EXIT_OK
    );
    assert!(report(&rep).pass);
}

#[test]
fn verify_fails_below_certificate_length() {
    let dir = TempDir::new().unwrap();
    let (inst, cert) = (p(&dir, "i.json"), p(&dir, "c.json"));
    assert_eq!(call(&["gen", "--family", "pp36", "--out", &inst]).0, EXIT_OK);
    assert_eq!(call(&["resolve", "--instance", &inst, "--out", &cert]).0, EXIT_OK);
    let (code, out, _) = call(&["verify", "--instance", &inst, "--cert", &cert, "--bound", "4"]);
    assert_eq!(code, EXIT_FAILED);
    let r: ReportFile = serde_json::from_str(&out).unwrap();
    assert!(!r.pass);
}

#[test]
fn pp36_refutes_four_steps() {
    let dir = TempDir::new().unwrap();
    let inst = p(&dir, "i.json");
    assert_eq!(call(&["gen", "--family", "pp36", "--out", &inst]).0, EXIT_OK);
    let (code, out, _) = call(&["lowerbound", "--instance", &inst, "--bound", "4"]);
    assert_eq!(code, EXIT_OK);
    let r: ReportFile = serde_json::from_str(&out).unwrap();
    assert!(r.pass, "{}", r.detail);
    let (code, out, _) = call(&["lowerbound", "--instance", &inst, "--bound", "5"]);
    assert_eq!(code, EXIT_FAILED);
    assert!(!serde_json::from_str::<ReportFile>(&out).unwrap().pass);
}

#[test]
fn two_k5_takes_three_cycles() {
    let dir = TempDir::new().unwrap();
    let (g, cert, dot) = (p(&dir, "g.json"), p(&dir, "c.json"), p(&dir, "c.dot"));
    assert_eq!(call(&["gen", "--family", "two-k5", "--out", &g]).0, EXIT_OK);
    assert_eq!(
        call(&["oddcover", "--graph", &g, "--kind", "cycle", "--out", &cert, "--dot", &dot]).0,
        EXIT_OK
    );
    let graph = read_graph(Path::new(&g)).unwrap();
    let Certificate::Cover(c) = read_certificate(Path::new(&cert)).unwrap() else {
        panic!("expected a cover");
    };
    assert_eq!(c.len(), 3);
    check_cover(&graph, &c).unwrap();
    assert_eq!(
        call(&["verify", "--graph", &g, "--cert", &cert, "--bound", "3"]).0,
        EXIT_OK
    );
    assert_eq!(
        call(&["verify", "--graph", &g, "--cert", &cert, "--bound", "2"]).0,
        EXIT_FAILED
    );
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph"));
}

#[test]
fn path_cover_and_forests_of_degree_four_graph() {
    let dir = TempDir::new().unwrap();
    let (g, paths, forests) = (p(&dir, "g.json"), p(&dir, "p.json"), p(&dir, "f.json"));
    assert_eq!(
        call(&[
            "gen",
            "--family",
            "degree4",
            "--vertices",
            "12",
            "--seed",
            "3",
            "--out",
            &g
        ])
        .0,
        EXIT_OK
    );
    assert_eq!(call(&["oddcover", "--graph", &g, "--out", &paths]).0, EXIT_OK);
    assert_eq!(call(&["arboricity", "--graph", &g, "--out", &forests]).0, EXIT_OK);
    let Certificate::Cover(c) = read_certificate(Path::new(&forests)).unwrap() else {
        panic!("expected a cover");
    };
    assert!(c.len() <= 3);
    assert_eq!(call(&["verify", "--graph", &g, "--cert", &forests]).0, EXIT_OK);
    assert_eq!(call(&["verify", "--graph", &g, "--cert", &paths]).0, EXIT_OK);
}

#[test]
fn cycle_cover_of_odd_graph_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let g = p(&dir, "g.json");
    std::fs::write(&g, r#"{"n": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
    let (code, _, err) = call(&["oddcover", "--graph", &g, "--kind", "cycle"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("odd-degree"));
}

#[test]
fn malformed_inputs_are_usage_errors() {
    let dir = TempDir::new().unwrap();
    let bad = p(&dir, "bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(call(&["resolve", "--instance", &bad]).0, EXIT_USAGE);
    assert_eq!(
        call(&["resolve", "--instance", &p(&dir, "missing.json")]).0,
        EXIT_USAGE
    );
    std::fs::write(&bad, r#"{"m": 2, "n": 2, "p": [0, 0], "p_prime": [0, 1]}"#).unwrap();
    assert_eq!(call(&["resolve", "--instance", &bad]).0, EXIT_USAGE);
    std::fs::write(&bad, r#"{"n": 2, "edges": [[0, 1], [1, 0]]}"#).unwrap();
    assert_eq!(call(&["oddcover", "--graph", &bad]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["diameter", "--shape", "2,0"]).0, EXIT_USAGE);
}

#[test]
fn lowerbound_instance_carries_its_bound() {
    let (code, out, _) = call(&["lowerbound", "--shape", "3,3,3,3,3,3"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["bound"], 4);
    assert_eq!(v["family"], "even2cycles");
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("selftest"));
}

#[test]
fn binary_reports_exact_diameter() {
    let out = Command::new(env!("CARGO_BIN_EXE_polyresolve"))
        .args(["diameter", "--exact", "--shape", "1,1,1,1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");
}
