//! End-to-end checks of the command-line interface: exit codes, the matrix
//! exchange format, and the JSON report schema.

use std::process::{Command, Output};

use terwilliger::matrix::RationalMatrix;
use terwilliger::rational::Rational;
use terwilliger::report::{DecompositionReport, SuiteReport};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_terwilliger"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 output")
}

#[test]
fn scheme_emits_a1_in_exchange_format() {
    let out = run(&["scheme", "--n", "4", "--d", "2", "--emit", "A1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let matrix = RationalMatrix::from_exchange_str(&text).unwrap();
    assert_eq!((matrix.rows(), matrix.cols()), (6, 6));
    assert_eq!(matrix.nnz(), 24);
    for r in 0..6 {
        let sum: Rational = (0..6).map(|c| matrix.get(r, c).clone()).sum();
        assert_eq!(sum, Rational::from_int(4));
    }
    // Round trip is bit-exact.
    assert_eq!(matrix.to_exchange_string(), text);
}

#[test]
fn scheme_emits_dense_idempotent() {
    let out = run(&["scheme", "--n", "5", "--d", "2", "--emit", "E0"]);
    assert_eq!(out.status.code(), Some(0));
    let matrix = RationalMatrix::from_exchange_str(&stdout_of(&out)).unwrap();
    assert_eq!(matrix.nnz(), 100);
    for (_, _, v) in matrix.iter_entries() {
        assert_eq!(v, &Rational::new(1, 10));
    }
}

#[test]
fn scheme_rejects_invalid_parameters() {
    let out = run(&["scheme", "--n", "3", "--d", "2", "--emit", "A1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn scheme_emit_estar_respects_base_point() {
    let out = run(&[
        "scheme",
        "--n",
        "4",
        "--d",
        "2",
        "--emit",
        "Estar0",
        "--base-point",
        "2,4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let matrix = RationalMatrix::from_exchange_str(&stdout_of(&out)).unwrap();
    assert_eq!(matrix.nnz(), 1);
    // {2,4} has colex rank 4 among the 2-subsets of [4].
    assert_eq!(matrix.get(4, 4), &Rational::ONE);
}

#[test]
fn scheme_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.mtx");
    let out = run(&[
        "scheme",
        "--n",
        "4",
        "--d",
        "2",
        "--emit",
        "H1_2_2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let matrix =
        RationalMatrix::from_exchange_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((matrix.rows(), matrix.cols()), (6, 6));
    // Unwritable path is a configuration error.
    let bad = run(&[
        "scheme",
        "--n",
        "4",
        "--d",
        "2",
        "--emit",
        "A0",
        "--out",
        "/nonexistent-dir/a.mtx",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn decompose_json_schema_and_values() {
    let out = run(&["decompose", "--n", "5", "--d", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = DecompositionReport::from_json(&stdout_of(&out)).unwrap();
    assert_eq!(report.n, 5);
    assert_eq!(report.d, 2);
    assert_eq!(report.regime, "2d<n<3d");
    let blocks: Vec<(usize, usize, usize, usize)> = report
        .blocks
        .iter()
        .map(|b| (b.r, b.s, b.e, b.block_size))
        .collect();
    assert_eq!(
        blocks,
        vec![(0, 0, 0, 3), (0, 1, 1, 2), (1, 0, 1, 1), (1, 1, 1, 1)]
    );
    assert_eq!(report.dim_t_formula, 15);
    assert_eq!(report.dim_t_closure, 15);
    assert!(report.matches);
}

#[test]
fn decompose_boundary_and_prior_regimes() {
    let out = run(&["decompose", "--n", "4", "--d", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = DecompositionReport::from_json(&stdout_of(&out)).unwrap();
    assert_eq!(report.regime, "n=2d");
    let blocks: Vec<(usize, usize, usize, usize)> = report
        .blocks
        .iter()
        .map(|b| (b.r, b.s, b.e, b.block_size))
        .collect();
    assert_eq!(blocks, vec![(0, 0, 0, 3), (0, 1, 1, 1), (1, 1, 1, 1)]);
    assert_eq!(report.dim_t_formula, 11);
    assert_eq!(report.dim_t_closure, 11);

    let out = run(&["decompose", "--n", "6", "--d", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = DecompositionReport::from_json(&stdout_of(&out)).unwrap();
    assert_eq!(report.regime, "n>=3d");
    assert!(report.matches);
}

#[test]
fn decompose_text_mentions_dimensions() {
    let out = run(&["decompose", "--n", "6", "--d", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("24"), "text was: {}", text);
    assert!(text.contains("MATCH"), "text was: {}", text);
}

#[test]
fn verify_single_suite_passes() {
    let out = run(&["verify", "--suite", "lemma21", "--v-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("PASS"));
}

#[test]
fn verify_scheme_restricted_suite() {
    let out = run(&[
        "verify",
        "--suite",
        "thm51-T-equals-N",
        "--n",
        "6",
        "--d",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    // The same suite on a non-boundary scheme is an infeasible sweep.
    let out = run(&[
        "verify",
        "--suite",
        "thm51-T-equals-N",
        "--n",
        "7",
        "--d",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("infeasible"));
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let out = run(&["verify", "--suite", "lemma99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_json_reports_round_trip() {
    let out = run(&[
        "verify", "--suite", "lemma22", "--v-max", "4", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let reports: Vec<SuiteReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.len(), 1);
    assert!(reports[0].passed());
    let re_serialized = serde_json::to_string_pretty(&reports).unwrap();
    let reparsed: Vec<SuiteReport> = serde_json::from_str(&re_serialized).unwrap();
    assert_eq!(reparsed, reports);
}

#[test]
fn verify_exit_one_on_counterexample() {
    // A flipped fixture entry must drive the suite to a counterexample and
    // exit code 1, with the failing case named in the output.
    let out = run(&[
        "verify",
        "--suite",
        "lemma21",
        "--v-max",
        "4",
        "--flip",
        "4,2,2,1,0,1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("FAIL"), "output was {}", text);
    assert!(text.contains("counterexample"), "output was {}", text);
    // Malformed flip values are a usage error.
    let bad = run(&["verify", "--suite", "lemma21", "--flip", "1,2,3"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_dump_dir_writes_residual() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "verify",
        "--suite",
        "lemma21",
        "--v-max",
        "4",
        "--flip",
        "4,2,2,1,0,1",
        "--dump-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let dumped = dir.path().join("lemma21-residual.mtx");
    assert!(dumped.exists(), "expected a residual dump");
    let residual =
        RationalMatrix::from_exchange_str(&std::fs::read_to_string(&dumped).unwrap()).unwrap();
    assert!(!residual.is_zero_matrix());
}

#[test]
fn help_is_available() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    for sub in ["scheme", "decompose", "verify"] {
        assert!(text.contains(sub));
    }
}
