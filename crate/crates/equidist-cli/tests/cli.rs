//! End-to-end checks of the binary: stated examples, exit codes, CSV/JSON
//! mirrors, byte-level determinism, and the help-text audit that every
//! library operation is reachable from exactly one subcommand.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equidist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn weilcheck_example_has_positive_margins() {
    let out = run(&["weilcheck", "--poly", "0,0,0.15", "--q", "7", "--k", "1..6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    for row in rows {
        let margin: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(margin > 0.0, "{row}");
    }
}

#[test]
fn gen_rejects_composite_modulus() {
    let out = run(&["gen", "--poly", "0,0.5", "--q", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("q must be prime"), "{err}");
    assert!(err.contains("--q"), "message names the flag: {err}");
}

#[test]
fn converge_example_emits_four_rows() {
    let text = stdout(&[
        "converge", "--poly", "0,0.7,0.3", "--qmin", "100", "--qmax", "100000", "--count",
        "4", "--f", "sin2pi",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "q,N,f_name,mean_re,mean_im,reference,abs_error,dstar");
    assert_eq!(lines.len(), 5, "header + 4 rows");
    let qs: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(qs, ["101", "1009", "10007", "100003"]);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "weilcheck", "--poly", "0.1,0.9,0.3", "--q", "1009", "--ksample", "40", "--seed", "7",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), second.status.code());
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.starts_with("# seed=7\n"), "seed echoed in the header");
}

#[test]
fn json_mirrors_csv() {
    let csv = stdout(&["discrepancy", "--poly", "0,0.7,0.3", "--q", "101"]);
    let json = stdout(&["discrepancy", "--poly", "0,0.7,0.3", "--q", "101", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let dstar_csv: f64 = csv
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(v["Dstar"].as_f64().unwrap(), dstar_csv);
    assert_eq!(dstar_csv, 12.0 / 101.0);
}

#[test]
fn out_flag_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.csv");
    let streamed = stdout(&["gen", "--poly", "0,0.4", "--q", "5"]);
    let out = run(&["gen", "--poly", "0,0.4", "--q", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), streamed);
}

#[test]
fn file_source_feeds_discrepancy() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.txt");
    std::fs::write(&path, "# corner points\n0.25\n0.75\n").unwrap();
    let text = stdout(&["discrepancy", "--in", path.to_str().unwrap()]);
    let dstar: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(dstar, 0.25);
}

#[test]
fn scan_reports_symmetry_over_the_full_range() {
    let text = stdout(&["scan", "--poly", "0,0,0.15", "--q", "7"]);
    assert!(text.starts_with("# conjugate_symmetry=pass\n"));
    assert_eq!(text.lines().count(), 2 + 7, "meta + header + k = 0..6");
}

#[test]
fn decay_violation_gates_exit_three() {
    // sin²(πx) has ĝ(±1) = -1/4, far above the 0.01 envelope.
    let out = run(&["decay", "--f", "sin2pi", "--q", "32", "--big-h", "0.01"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["decay", "--f", "sin2pi", "--q", "32", "--big-h", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn every_operation_reachable_from_exactly_one_subcommand() {
    const SUBCOMMANDS: [&str; 9] = [
        "reduce",
        "gen",
        "weylsum",
        "scan",
        "weilcheck",
        "discrepancy",
        "integrate",
        "converge",
        "decay",
    ];
    const OPERATIONS: [&str; 24] = [
        "is_prime",
        "next_prime",
        "geometric_schedule",
        "reduce_polynomial",
        "min_modulus",
        "eval_mod",
        "generate_sequence",
        "linear_sequence",
        "load_sequence",
        "complete_exp_sum",
        "weyl_sum",
        "weil_bound_check",
        "all_k_scan",
        "conjugate_frequency_check",
        "fourier_decay_check",
        "interval_count",
        "empirical_measure",
        "star_discrepancy",
        "erdos_turan_bound",
        "weak_convergence_study",
        "integrate",
        "smooth_indicator",
        "registry",
        "convergence_table",
    ];
    let helps: Vec<(&str, String)> = SUBCOMMANDS
        .iter()
        .map(|&s| (s, stdout(&[s, "--help"])))
        .collect();
    for op in OPERATIONS {
        let hosts: Vec<&str> = helps
            .iter()
            .filter(|(_, help)| help.contains(op))
            .map(|(s, _)| *s)
            .collect();
        assert_eq!(hosts.len(), 1, "`{op}` reachable from {hosts:?}");
    }
}
