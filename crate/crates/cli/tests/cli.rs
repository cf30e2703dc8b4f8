use std::fs;
use std::process::{Command, Output};

use maxdet::report::{BoundKind, BoundReport, ScheduleReport, SearchRecord};
use maxdet::verify::VerifySummary;
use maxdet::{det_exact, ZeroOneMatrix};
use num_bigint::BigInt;

fn maxdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxdet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = maxdet(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn reports(args: &[&str]) -> (String, Vec<BoundReport>) {
    let text = stdout_ok(args);
    let parsed = serde_json::from_str(&text).unwrap();
    (text, parsed)
}

fn find<'a>(r: &'a [BoundReport], name: &str) -> &'a BoundReport {
    r.iter().find(|b| b.name == name).unwrap_or_else(|| panic!("no {name} in report"))
}

#[test]
fn bound_example_triple() {
    let (text, r) = reports(&["bound", "--n", "1000", "--k", "3"]);
    assert_eq!((find(&r, "hadamard").mantissa, find(&r, "hadamard").exponent), (3.636, 238));
    assert_eq!(find(&r, "ryser").exponent, 238);
    assert!((find(&r, "ryser").mantissa - 2.31).abs() < 0.005);
    assert_eq!(find(&r, "pair").exponent, 230);
    assert!((find(&r, "pair").mantissa - 1.08).abs() < 0.005);
    assert!(r.iter().any(|b| b.kind == BoundKind::Lower));
    // re-serialising the parsed report reproduces the output exactly
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", text);
}

#[test]
fn bound_q_rows_and_perturbed() {
    let (_, r) = reports(&["bound", "--n", "1000", "--k", "17", "--q", "8"]);
    let q = find(&r, "q-rows");
    assert_eq!((q.mantissa, q.exponent), (9.0074, 613));

    let (text, r) = reports(&["bound", "--k", "4", "--delta", "0.01", "--k-tilde", "2.5"]);
    assert_eq!(find(&r, "perturbed-rate").mantissa, 1.9892);
    assert_eq!(find(&r, "dtilde").kind, BoundKind::ConjecturalUpper);
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", text);
}

#[test]
fn bound_rejects_bad_parameters() {
    for args in [
        &["bound", "--n", "3", "--k", "5"][..],
        &["bound", "--k", "4", "--delta", "1.5"],
        &["bound", "--n", "10"],
        &["bound", "--n", "10", "--k", "3", "--q", "4"],
    ] {
        let out = maxdet(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    }
}

#[test]
fn schedule_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("counts.csv");
    let text = stdout_ok(&[
        "schedule", "--m", "1000", "--n", "1000", "--k", "17", "--csv", csv.to_str().unwrap(),
    ]);
    let rep: ScheduleReport = serde_json::from_str(&text).unwrap();
    assert_eq!(rep.r, 17);
    assert_eq!(rep.q_sequence.iter().sum::<u64>(), 1000);
    assert_eq!(rep.counts[&1], 57);
    assert_eq!(serde_json::to_string_pretty(&rep).unwrap() + "\n", text);
    assert!(text.contains("\"Q\""));

    let rows = fs::read_to_string(&csv).unwrap();
    let lines: Vec<_> = rows.lines().collect();
    assert_eq!(lines.len(), 18);
    assert_eq!(lines[0], "i,a_i");
    assert_eq!(lines[1], "17,4");
    assert_eq!(lines[17], "1,57");
}

fn matrix(args: &[&str]) -> ZeroOneMatrix {
    stdout_ok(args).parse().unwrap()
}

fn abs_det(m: &ZeroOneMatrix) -> BigInt {
    let d = det_exact(&m.to_int_matrix()).unwrap();
    if d < BigInt::from(0) { -d } else { d }
}

#[test]
fn construct_matrices() {
    assert_eq!(abs_det(&matrix(&["construct", "fano"])), BigInt::from(24));
    assert_eq!(abs_det(&matrix(&["construct", "biplane"])), BigInt::from(1215));
    assert_eq!(matrix(&["construct", "plane", "--p", "3"]).rows(), 13);
    assert_eq!(abs_det(&matrix(&["construct", "paper", "--id", "B10"])), BigInt::from(48));
    assert_eq!(abs_det(&matrix(&["construct", "paper", "--id", "R7_K2"])), BigInt::from(4));
    let big = matrix(&["construct", "block-diag", "--of", "fano", "--t", "2"]);
    assert_eq!((big.rows(), abs_det(&big)), (14, BigInt::from(576)));

    let s = stdout_ok(&["construct", "s-matrix", "--n", "3", "--a", "1", "--k", "3"]);
    assert_eq!(s, "3 3\n3 1 1\n1 3 1\n1 1 3\n");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.txt");
    fs::write(&path, "3 3\n1 1 0\n0 1 1\n1 0 1\n").unwrap();
    let tri = matrix(&["construct", "block-diag", "--file", path.to_str().unwrap(), "--t", "3"]);
    assert_eq!(abs_det(&tri), BigInt::from(8));

    assert_eq!(maxdet(&["construct", "plane", "--p", "4"]).status.code(), Some(2));
    assert_eq!(maxdet(&["construct", "paper", "--id", "Z9"]).status.code(), Some(2));
}

fn search(args: &[&str]) -> SearchRecord {
    let mut full = vec!["search"];
    full.extend_from_slice(args);
    let text = stdout_ok(&full);
    let rec: SearchRecord = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&rec).unwrap() + "\n", text);
    rec
}

#[test]
fn search_outputs_witness() {
    let rec = search(&["--class", "S", "--n", "7", "--k", "3"]);
    assert_eq!(rec.max_abs_det, "24");
    assert!(rec.exhaustive);
    let w: ZeroOneMatrix = rec.witness.parse().unwrap();
    assert_eq!(abs_det(&w), BigInt::from(24));

    let seq = search(&["--class", "R", "--n", "7", "--k", "2", "--threads", "1"]);
    let par = search(&["--class", "R", "--n", "7", "--k", "2", "--threads", "4"]);
    assert_eq!(seq.max_abs_det, "4");
    assert_eq!((seq.max_abs_det, seq.witness), (par.max_abs_det, par.witness));

    let unpruned = search(&["--class", "T", "--n", "4", "--k", "2", "--no-prune"]);
    let pruned = search(&["--class", "T", "--n", "4", "--k", "2"]);
    assert_eq!(unpruned.max_abs_det, pruned.max_abs_det);

    let starved = search(&["--class", "R", "--n", "7", "--k", "3", "--budget", "10", "--threads", "1"]);
    assert!(!starved.exhaustive);
}

#[test]
fn search_rejects_bad_requests() {
    for args in [
        &["search", "--class", "R", "--n", "8", "--k", "2"][..],
        &["search", "--class", "T", "--n", "7", "--k", "2"],
        &["search", "--class", "Q", "--n", "4", "--k", "2"],
        &["search", "--class", "S", "--n", "4", "--k", "5"],
    ] {
        assert_ne!(maxdet(args).status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn figure_csv() {
    let csv = stdout_ok(&["figure", "--k", "49"]);
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines[0], "kind,q,value,gap");
    assert_eq!(lines.len(), 1 + 49 + 1);
    assert!(lines[1].starts_with("point,1,") && lines[1].ends_with(",0"));
    let opt: Vec<_> = lines[50].split(',').collect();
    assert_eq!(&opt[..2], ["optimum", "23"]);
    let gap: f64 = opt[3].parse().unwrap();
    assert!((gap - 0.0069).abs() < 5e-5);

    let with_beta = stdout_ok(&["figure", "--k", "17", "--beta"]);
    let last: Vec<_> = with_beta.lines().last().unwrap().split(',').collect();
    assert_eq!(&last[..2], ["beta", ""]);
    let opt_line = with_beta.lines().find(|l| l.starts_with("optimum")).unwrap();
    let opt_gap: f64 = opt_line.split(',').nth(3).unwrap().parse().unwrap();
    assert!(last[3].parse::<f64>().unwrap() > opt_gap);
}

#[test]
fn verify_exit_code_tracks_failures() {
    let out = maxdet(&["verify", "--json"]);
    let summary: VerifySummary = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(out.status.success(), summary.failed == 0);
    assert!(summary.items.iter().any(|i| i.id == "growth.k10.alpha" && i.pass));
    assert!(summary.items.iter().any(|i| i.id.starts_with("counterexample.") && i.pass));

    let text = maxdet(&["verify"]);
    let body = String::from_utf8(text.stdout).unwrap();
    assert_eq!(body.lines().filter(|l| l.starts_with("PASS ") || l.starts_with("FAIL ")).count(), summary.items.len());
    assert!(body.trim_end().ends_with(&format!("{} passed, {} failed", summary.passed, summary.failed)));
}
