//! End-to-end tests of the `modlie` binary: file formats, subcommands,
//! JSON output and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn modlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modlie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("modlie-test-{}-{}", std::process::id(), name));
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

const W3: &str = "field 2\ndim 3\n[1,2]=e3\n[1,3]=e1\n[2,3]=e2\n";

#[test]
fn validate_and_exit_codes() {
    let ok = write_temp("w3.lie", W3);
    let out = modlie(&["validate", ok.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("ok"));

    // broken Jacobi: exit 1 with a triple witness
    let bad = write_temp("bad.lie", "field 5\ndim 3\n[1,2]=e3\n[1,3]=3*e1\n[2,3]=e2\n");
    let out = modlie(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("Jacobi"));

    // storage convention violation: exit 1
    let conv = write_temp("conv.lie", "field 2\ndim 3\n[2,1]=e3\n");
    let out = modlie(&["validate", conv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // missing file
    let out = modlie(&["validate", "/nonexistent.lie"]);
    assert_eq!(out.status.code(), Some(1));

    // unknown command
    let out = modlie(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn make_round_trips_through_files() {
    let out = modlie(&["make", "builtin", "psl3f3-table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("field 3"));
    assert!(text.contains("dim 7"));
    assert!(text.contains("[2,5] = 2*e7"));

    let path = write_temp("psl3f3.lie", &text);
    let out = modlie(&["info", path.to_str().unwrap()]);
    assert!(stdout(&out).contains("dim 7"));
    assert!(stdout(&out).contains("perfect: true"));
}

#[test]
fn der_json_matches_quoted_dimensions() {
    let out = modlie(&["make", "psl", "3", "--field", "3"]);
    let path = write_temp("psl3.lie", &stdout(&out));
    let out = modlie(&["der", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let j = stdout(&out);
    assert!(j.contains("\"der_dim\":14"));
    assert!(j.contains("\"inn_dim\":7"));
    assert!(j.contains("\"out_dim\":7"));
    assert!(j.contains("\"out_solvable\":false"));
    assert!(j.contains("\"central_simple\":true"));
}

#[test]
fn centroid_on_builtin_tables() {
    let out = modlie(&["make", "builtin", "g6"]);
    let path = write_temp("g6.lie", &stdout(&out));
    let out = modlie(&["centroid", path.to_str().unwrap(), "--json"]);
    let j = stdout(&out);
    assert!(j.contains("\"centroid_dim\":2"));
    assert!(j.contains("\"central_simple\":false"));
}

#[test]
fn cpa_enumeration_and_check_mode() {
    let out = modlie(&["make", "builtin", "g6"]);
    let g6 = write_temp("g6b.lie", &stdout(&out));
    let out = modlie(&["cpa", g6.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("2 CPA structure(s)"));
    assert!(text.contains("trivial"));
    assert!(text.contains("adjoint"));
    assert!(text.contains("complete"));

    // check mode accepts the adjoint product and rejects a broken one
    let adjoint = "field 2\ndim 6\ne1.e2 = e3\ne1.e3 = e4\ne1.e4 = e5\ne1.e5 = e2 + e4\n\
                   e2.e3 = e1\ne2.e5 = e1 + e6\ne2.e6 = e3 + e5\ne3.e4 = e1 + e6\n\
                   e3.e6 = e2\ne4.e5 = e6\ne4.e6 = e3\ne5.e6 = e4\n";
    let prod = write_temp("adjoint.prod", adjoint);
    let out = modlie(&["cpa", g6.to_str().unwrap(), "--check", prod.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("adjoint"));

    let broken = "field 2\ndim 6\ne1.e2 = e3\n";
    let prod = write_temp("broken.prod", broken);
    let out = modlie(&["cpa", g6.to_str().unwrap(), "--check", prod.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("axiom"));
}

#[test]
fn taut_reports_search_status() {
    let out = modlie(&["make", "psl", "3", "--field", "3"]);
    let path = write_temp("psl3t.lie", &stdout(&out));
    let out = modlie(&["taut", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("taut"));
    assert!(text.contains("no split section"));
    assert!(text.contains("complete"));

    // a tiny budget makes the search inconclusive: exit 2
    let out = modlie(&["taut", path.to_str().unwrap(), "--budget", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("unknown"));
}

#[test]
fn budget_env_override() {
    let out = modlie(&["make", "psl", "3", "--field", "3"]);
    let path = write_temp("psl3e.lie", &stdout(&out));
    let out = Command::new(env!("CARGO_BIN_EXE_modlie"))
        .args(["taut", path.to_str().unwrap()])
        .env("MODLIE_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_inner_structure() {
    // g6 over F_4 with the adjoint product: phi = id, single eigenvalue 1
    let out = modlie(&["make", "builtin", "g6"]);
    let g6_text = stdout(&out);
    let g6 = write_temp("g6d.lie", &g6_text);
    let adjoint: String = g6_text
        .lines()
        .map(|l| {
            if l.starts_with('[') {
                l.replacen("[", "e", 1).replacen(",", ".e", 1).replacen("]", "", 1)
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    let prod = write_temp("g6adj.prod", &adjoint);
    let out = modlie(&[
        "decompose",
        g6.to_str().unwrap(),
        "--prod",
        prod.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let j = stdout(&out);
    assert!(j.contains("\"classification\":\"adjoint\""));
    assert!(j.contains("\"n_dim\":0"));
    assert!(j.contains("\"h_dim\":6"));
    assert!(j.contains("\"properties_ok\":true"));
    assert!(j.contains("\"commutator_formula_ok\":true"));
}

#[test]
fn series_output() {
    let path = write_temp("w3s.lie", W3);
    let out = modlie(&["series", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    // w3 is perfect: derived series stabilizes at dim 3
    assert!(stdout(&out).contains("\"stabilized_nonzero\":true"));
}

#[test]
fn json_schema_is_stable() {
    let path = write_temp("w3j.lie", W3);
    let a = stdout(&modlie(&["der", path.to_str().unwrap(), "--json"]));
    let b = stdout(&modlie(&["der", path.to_str().unwrap(), "--json"]));
    let strip = |s: &str| {
        // timing differs run to run; everything else is bit-stable
        let mut out = String::new();
        let mut rest = s;
        while let Some(pos) = rest.find("\"timing_ms\":") {
            out.push_str(&rest[..pos]);
            let tail = &rest[pos..];
            let end = tail.find(',').unwrap();
            rest = &tail[end..];
        }
        out.push_str(rest);
        out
    };
    assert_eq!(strip(&a), strip(&b));
}
