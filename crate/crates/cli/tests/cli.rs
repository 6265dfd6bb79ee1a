mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use common::validate_dot;
use grouplab::document::GroupDocument;
use grouplab::{construct, Format};
use grouplab_core::FamilySpec;

fn grouplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grouplab"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against a checked-in golden file; set `UPDATE_GOLDEN=1` to
/// rewrite it after an intended output change.
fn check_golden(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn golden_outputs() {
    check_golden("c3_cayley.dot", &construct("C3", Format::DotCayley).unwrap());
    check_golden("d3_cayley.dot", &construct("D3", Format::DotCayley).unwrap());
    check_golden("q8_cycle.dot", &construct("Q8", Format::DotCycle).unwrap());
    check_golden("v4_lattice.dot", &construct("C2xC2", Format::DotLattice).unwrap());
    check_golden("c4.json", &construct("C4", Format::Json).unwrap());
}

#[test]
fn emissions_are_deterministic() {
    for spec in ["Q8", "SD8", "DQ8", "C4xC2xC2"] {
        for format in ["json", "dot-cayley", "dot-cycle", "dot-lattice"] {
            let a = grouplab(&["construct", spec, "--format", format]);
            let b = grouplab(&["construct", spec, "--format", format]);
            assert!(a.status.success(), "{spec} {format}");
            assert_eq!(a.stdout, b.stdout, "{spec} {format}");
        }
    }
}

#[test]
fn dot_outputs_parse() {
    for spec in ["C1", "C5", "D6", "Q8", "Dic6", "SA8", "DQ8", "C2xC2xC2"] {
        for format in [Format::DotCayley, Format::DotCycle, Format::DotLattice] {
            let text = construct(spec, format).unwrap();
            validate_dot(&text).unwrap_or_else(|e| panic!("{spec} {format:?}: {e}\n{text}"));
        }
    }
}

#[test]
fn cayley_graph_shape() {
    // D3: the rotation gives 6 directed edges, the reflection 3 undirected ones.
    let text = construct("D3", Format::DotCayley).unwrap();
    let summary = validate_dot(&text).unwrap();
    assert!(summary.directed);
    assert_eq!(summary.nodes, 6);
    assert_eq!(summary.edges, 9);
    assert_eq!(text.matches("dir=none").count(), 3);
    let colors: std::collections::BTreeSet<&str> = text
        .lines()
        .filter(|l| l.contains("->"))
        .filter_map(|l| l.split("color=\"").nth(1))
        .map(|rest| &rest[..7])
        .collect();
    assert_eq!(colors.len(), 2);
}

#[test]
fn lattice_of_semidihedral_has_fifteen_nodes() {
    let out = grouplab(&["construct", "SD8", "--format", "dot-lattice"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let summary = validate_dot(&text).unwrap();
    let declared = text.lines().filter(|l| l.trim_start().starts_with('s') && !l.contains("->") && l.contains("[label=")).count();
    assert_eq!(declared, 15);
    assert_eq!(summary.nodes, 15);
    assert!(text.contains("label=\"2\""));
}

#[test]
fn trivial_cycle_graph() {
    let out = grouplab(&["construct", "C1", "--format", "dot-cycle"]);
    let text = stdout(&out);
    let summary = validate_dot(&text).unwrap();
    assert!(!summary.directed);
    assert_eq!((summary.nodes, summary.edges), (1, 0));
}

#[test]
fn json_round_trip() {
    for spec in ["Q8", "SD8", "DQ8", "C4xC2xC2", "sdp:12:5"] {
        let out = grouplab(&["construct", spec, "--format", "json"]);
        let doc = GroupDocument::from_json(&stdout(&out)).unwrap();
        assert_eq!(doc.schema, 1);
        let parsed: FamilySpec = spec.parse().unwrap();
        let built = parsed.build().unwrap();
        assert_eq!(doc.order, built.order());
        assert_eq!(doc.to_group().unwrap(), built, "{spec}");
    }
}

#[test]
fn documents_are_accepted_as_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sa8.json");
    let out = grouplab(&["construct", "SA8", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let cmp = grouplab(&["compare", path.to_str().unwrap(), "SA8", "--mode", "iso"]);
    assert_eq!(cmp.status.code(), Some(0));
}

fn analysis(spec: &str) -> serde_json::Value {
    let out = grouplab(&["analyze", spec]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_reports() {
    let sa = analysis("SA8");
    assert_eq!(sa["subgroup_count"], 11);
    assert_eq!(sa["normal_count"], 9);
    assert_eq!(sa["unicorn_count"], 7);
    assert_eq!(sa["abelian"], false);
    let ab = analysis("C8xC2");
    assert_eq!(ab["subgroup_count"], 11);
    assert_eq!(ab["normal_count"], 11);
    let dq = analysis("DQ8");
    let central: Vec<(String, String)> = dq["decompositions"]["central"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| (d["parts"][0].as_str().unwrap().to_string(), d["parts"][1].as_str().unwrap().to_string()))
        .collect();
    assert!(central.contains(&("Q8".into(), "C4".into())));
    assert!(central.contains(&("D4".into(), "C4".into())));
    let sizes: usize = dq["subgroup_classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap() as usize).sum();
    assert_eq!(sizes, dq["subgroup_count"].as_u64().unwrap() as usize);
}

#[test]
fn compare_exit_codes() {
    let lattice = grouplab(&["compare", "C8xC2", "SA8", "--mode", "lattice"]);
    assert_eq!(lattice.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&lattice.stdout).unwrap();
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["witness"].as_array().unwrap().len(), 11);

    let iso = grouplab(&["compare", "C8xC2", "SA8", "--mode", "iso"]);
    assert_eq!(iso.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&iso.stdout).unwrap();
    assert_eq!(v["equivalent"], false);
    assert!(v["witness"].is_null());

    let cycles = grouplab(&["compare", "C4xC2xC2", "DQ8", "--mode", "cyclegraph"]);
    assert_eq!(cycles.status.code(), Some(0));
    let pauli = grouplab(&["compare", "pauli1", "DQ8"]);
    assert_eq!(pauli.status.code(), Some(0));
}

#[test]
fn error_exit_codes() {
    let parse = grouplab(&["construct", "X9"]);
    assert_eq!(parse.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&parse.stderr).lines().count(), 1);
    let param = grouplab(&["construct", "Dic5"]);
    assert_eq!(param.status.code(), Some(3));
    assert_eq!(String::from_utf8_lossy(&param.stderr).lines().count(), 1);
    let too_big = grouplab(&["analyze", "C128"]);
    assert_eq!(too_big.status.code(), Some(3));
    let bad_flag = grouplab(&["construct", "C4", "--format", "svg"]);
    assert_eq!(bad_flag.status.code(), Some(2));
    let missing = grouplab(&["analyze", "/nonexistent/group.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn verify_single_claim() {
    let out = grouplab(&["verify", "--claim", "six-groups-order-32", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 1);
    assert_eq!(results[0]["id"], "six-groups-order-32");
    assert_eq!(results[0]["status"], "PASS");
    let unknown = grouplab(&["verify", "--claim", "no-such-claim"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn verify_full_suite_passes_without_color() {
    let out = grouplab(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.contains('\x1b'));
    assert_eq!(text.lines().filter(|l| l.contains(" PASS ")).count(), 16);
    assert!(text.contains("16/16 claims passed"));
}

#[test]
fn tampered_table_fails_the_latin_square_claim() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = GroupDocument::from_json(&construct("Q8", Format::Json).unwrap()).unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, doc.to_json()).unwrap();
    doc.table[1].swap(2, 3);
    let bad = dir.path().join("tampered.json");
    std::fs::write(&bad, doc.to_json()).unwrap();

    let ok = grouplab(&["verify", "--claim", "latin-square", "--table", good.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    let out = grouplab(&["verify", "--claim", "latin-square", "--table", bad.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["status"], "FAIL");
    assert!(v["results"][0]["detail"].as_str().unwrap().contains("tampered.json"));

    let load = grouplab(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(load.status.code(), Some(3));
}
