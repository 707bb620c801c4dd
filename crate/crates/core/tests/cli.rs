use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fanspline::cli::{parse_fan, ReportDocument};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fanspline"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_report(args: &[&str]) -> ReportDocument {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report parses")
}

#[test]
fn construct_then_hilbert() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p2.json");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["construct", "p2", "--n", "3", "-o", p]).status.code(), Some(0));
    let report = json_report(&["hilbert", p, "--max-degree", "8"]);
    let h = report.hilbert.unwrap();
    assert_eq!(h.dims, vec![1, 4, 10, 20, 34, 52, 74, 100, 130]);
    let poly = h.polynomial.unwrap();
    assert_eq!(poly.display, "2k^2 + 2");
    assert_eq!(poly.stable_from, 1);
}

#[test]
fn shipped_fixture_matches_constructor() {
    let fan = parse_fan(&fixture("p2_a3.json")).unwrap();
    assert_eq!(fan.rays().len(), 6);
    assert_eq!(fan.num_maximal_cones(), 4);
    assert_eq!(fan, fanspline::constructions::p2_fan(3));
}

#[test]
fn alpha_on_fixture() {
    let report = json_report(&["alpha", fixture("p2_a3.json").to_str().unwrap(), "--codim", "1"]);
    let a = report.alpha.unwrap();
    assert_eq!(a.alpha, 1);
    let contributing: Vec<_> = a.flats.iter().filter(|f| f.a_xi.unwrap_or(0) > 0).collect();
    assert_eq!(contributing.len(), 1);
    assert_eq!(contributing[0].basis, vec![vec!["1", "1", "1"]]);
}

#[test]
fn homology_reports_euler_identity() {
    let report = json_report(&["homology", fixture("p2_a3.json").to_str().unwrap()]);
    let h = report.homology.unwrap();
    assert_eq!(h.max_degree, 10);
    assert!(h.euler_identity && h.squares_to_zero);
    assert_eq!(h.dims[1], vec![0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
}

#[test]
fn arrangement_of_braid_and_of_fan() {
    let braid = json_report(&["arrangement", "--braid", "3", "--essential"]).arrangement.unwrap();
    assert_eq!(braid.poincare, vec![1, 6, 11, 6]);
    assert_eq!(braid.flat_counts, vec![1, 6, 7, 1]);
    let walls = json_report(&["arrangement", fixture("p2_a3.json").to_str().unwrap()])
        .arrangement
        .unwrap();
    assert_eq!(walls.poincare, braid.poincare);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let malformed = dir.path().join("bad.json");
    std::fs::write(&malformed, "{\"dim\": 3, \"rays\": [[1,0").unwrap();
    let out = run(&["faces", malformed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));

    let non_pointed = dir.path().join("line.json");
    std::fs::write(
        &non_pointed,
        r#"{"dim": 3, "rays": [[1,0,0],[-1,0,0],[0,1,0],[0,0,1]], "maximal_cones": [[0,1,2,3]]}"#,
    )
    .unwrap();
    let out = run(&["faces", non_pointed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("contains a line"));

    assert_eq!(run(&["faces", "/nonexistent/fan.json"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["alpha", fixture("p2_a3.json").to_str().unwrap(), "--codim", "7"]).status.code(), Some(2));
}

#[test]
fn rational_coordinates_normalize() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("half.json");
    std::fs::write(
        &path,
        r#"{"dim": 3, "rays": [["1/2","0","0"],["0","2/3","0"],[0,0,5]], "maximal_cones": [[0,1,2]]}"#,
    )
    .unwrap();
    let fan = parse_fan(&path).unwrap();
    let mut rays: Vec<Vec<String>> = fan.rays().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    rays.sort();
    assert_eq!(rays, vec![vec!["0", "0", "1"], vec!["0", "1", "0"], vec!["1", "0", "0"]]);
}

#[test]
fn json_round_trips_and_is_deterministic() {
    let path = fixture("p2_a3.json");
    let args = ["--json", "hilbert", path.to_str().unwrap()];
    let first = run(&args).stdout;
    let second = run(&args).stdout;
    assert_eq!(first, second);
    let report: ReportDocument = serde_json::from_slice(&first).unwrap();
    let mut again = serde_json::to_string_pretty(&report).unwrap();
    again.push('\n');
    assert_eq!(again.as_bytes(), first.as_slice());

    let text_args = ["homology", path.to_str().unwrap()];
    assert_eq!(run(&text_args).stdout, run(&text_args).stdout);
}

#[test]
fn construct_writes_a_readable_document() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, n) in [("p1", "3"), ("p2", "4"), ("sigma-prime", "3"), ("annulus", "3")] {
        let path = dir.path().join(format!("{kind}.json"));
        let out = run(&["construct", kind, "--n", n, "-o", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        parse_fan(&path).unwrap();
    }
    assert_eq!(run(&["construct", "p2", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn verify_paper_exit_code_matches_its_report() {
    let out = run(&["verify-paper"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with('[')).collect();
    assert_eq!(lines.len(), 12);
    let any_failed = lines.iter().any(|l| l.starts_with("[FAIL]"));
    assert_eq!(out.status.code(), Some(i32::from(any_failed)));
    assert!(!text.contains("ms)"), "output must not carry timings");
}
