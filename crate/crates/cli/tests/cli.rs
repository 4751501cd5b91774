//! CLI contract tests: exit codes, usage errors naming the offending flag,
//! determinism, and text/JSON value agreement.

use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qjacobi"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn uniruled_happy_path() {
    let (stdout, _, code) = run(&["uniruled", "--n", "8", "--norm", "3/14", "--residue", "5"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "exists = false, multiplicity = 0\n");
}

#[test]
fn uniruled_with_witness() {
    let (stdout, _, code) = run(&[
        "uniruled",
        "--n",
        "2",
        "--norm",
        "3/2",
        "--residue",
        "1",
        "--witness",
        "--r-bound",
        "3",
        "--d-bound",
        "5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "exists = true, multiplicity = 120\nwitness = [(2, 1)]\n"
    );
}

#[test]
fn usage_error_names_the_flag() {
    let (_, stderr, code) = run(&[
        "coeff",
        "--form",
        "f",
        "--n",
        "2",
        "--norm",
        "7/3",
        "--residue",
        "1",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--norm"), "stderr: {stderr}");

    let (_, stderr, code) = run(&["uniruled", "--n", "2", "--norm", "3/2", "--residue", "0"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--residue"), "stderr: {stderr}");

    let (_, _, code) = run(&["table", "--which", "nonsense"]);
    assert_eq!(code, 2);
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        vec!["table", "--which", "eigenvalues"],
        vec!["series", "--form", "phi"],
        vec!["sweep", "--max-d", "4"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a, b, "nondeterministic output for {args:?}");
    }
}

#[test]
fn json_and_text_report_identical_values() {
    let (text, _, _) = run(&[
        "coeff",
        "--form",
        "f",
        "--n",
        "2",
        "--norm",
        "6",
        "--residue",
        "0",
    ]);
    let (json_out, _, _) = run(&[
        "--json",
        "coeff",
        "--form",
        "f",
        "--n",
        "2",
        "--norm",
        "6",
        "--residue",
        "0",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&json_out).unwrap();
    let json_value = parsed["results"]["coeff"].as_str().unwrap();
    let text_value = text.trim().strip_prefix("coeff = ").unwrap();
    assert_eq!(json_value, text_value);
    assert_eq!(parsed["subcommand"], "coeff");

    // table values agree between modes as well
    let (text, _, _) = run(&["table", "--which", "multiplicities"]);
    let (json_out, _, _) = run(&["--json", "table", "--which", "multiplicities"]);
    let parsed: serde_json::Value = serde_json::from_str(&json_out).unwrap();
    for line in text.lines().skip(1) {
        let mut parts = line.split('\t');
        let norm = parts.next().unwrap();
        let value = parts.next().unwrap();
        assert_eq!(
            parsed["results"][&format!("f({norm})")].as_str().unwrap(),
            value
        );
    }
}

#[test]
fn series_lines_are_sorted_terms() {
    let (stdout, _, code) = run(&["series", "--form", "f", "--qprec", "6"]);
    assert_eq!(code, 0);
    let mut last: Option<(i64, i64)> = None;
    for line in stdout.lines() {
        let parts: Vec<&str> = line.split(' ').collect();
        assert_eq!(parts.len(), 3, "line {line:?}");
        let key = (
            parts[0].parse::<i64>().unwrap(),
            parts[1].parse::<i64>().unwrap(),
        );
        if let Some(prev) = last {
            assert!(prev < key, "unsorted: {prev:?} then {key:?}");
        }
        last = Some(key);
    }
    // leading Laurent term of f
    assert!(stdout.starts_with("-1 0 1\n"));
}

#[test]
fn series_qprec_only_raises() {
    let (short, _, _) = run(&["series", "--form", "delta", "--qprec", "4"]);
    // 12 is the floor, so requesting less changes nothing
    let (default, _, _) = run(&["series", "--form", "delta"]);
    assert_eq!(short, default);
    let (long, _, _) = run(&["series", "--form", "delta", "--qprec", "14"]);
    assert!(long.lines().count() > default.lines().count());
}

#[test]
fn fano_verify_passes_and_exits_zero() {
    let (stdout, _, code) = run(&["fano", "verify"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("n945 = 945 PASS"));
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn sweep_reports_counterexample_row() {
    let (stdout, _, code) = run(&["sweep", "--max-d", "4"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("n=8: coefficient at (d, r) = (1, 5) is 0"));
    assert!(stdout.contains("nonnegative-invariant zeros for n <= 7: 0"));
    let (_, _, code) = run(&["sweep", "--max-d", "1"]);
    assert_eq!(code, 2);
}
