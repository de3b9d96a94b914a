use std::process::{Command, Output};

fn grover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grover")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn run_table_trace_shows_worked_amplitudes() {
    let o = grover(&["run", "--n", "3", "--target", "5", "--trace", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("0.883883"), "{out}");
    assert!(out.contains("0.972272"), "{out}");
    assert!(out.contains("final probability    0.945312"), "{out}");
    let rows = out.lines().filter(|l| l.trim_start().starts_with(|c: char| c.is_ascii_digit())).count();
    assert_eq!(rows, 2);
}

#[test]
fn dense_dump_prints_both_matrices() {
    let o = grover(&["run", "--n", "3", "--target", "5", "--dense-dump"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("I|x0> =\n"));
    assert!(out.contains("  [  0   0   0   0   0  -1   0   0]"), "{out}");
    assert!(out.contains("Q = (1/4) x"));
    assert!(out.contains("  [ -3   1   1   1   1  -1   1   1]"), "{out}");
    assert!(out.contains("  [  1   1   1   1   1   3   1   1]"), "{out}");
}

#[test]
fn json_is_byte_deterministic_without_meta() {
    let args = ["run", "--n", "3", "--seed", "7", "--shots", "1000", "--format", "json", "--no-meta"];
    let a = grover(&args);
    let b = grover(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys.len(), 4);
    for k in ["plan", "trace", "histogram", "cost"] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    assert_eq!(v["histogram"]["shots"], 1000);

    let with_meta = grover(&["run", "--n", "3", "--seed", "7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&with_meta.stdout).unwrap();
    assert_eq!(v["meta"]["seed"], 7);
}

#[test]
fn csv_trace_has_one_row_per_iteration() {
    for (n, k) in [(3, 2), (5, 4), (8, 12)] {
        let o = grover(&["run", "--n", &n.to_string(), "--format", "csv"]);
        assert_eq!(o.status.code(), Some(0));
        let out = stdout(&o);
        assert!(out.ends_with("\r\n"));
        let lines: Vec<_> = out.split("\r\n").filter(|l| !l.is_empty()).collect();
        assert_eq!(lines.len(), k + 1, "n={n}");
        assert_eq!(lines[0], "k,target_amplitude,offtarget_amplitude,predicted_target,plane_residual");
    }
}

#[test]
fn usage_errors_exit_2() {
    let cases: [&[&str]; 6] = [
        &["run", "--n", "6", "--dense-dump"],
        &["run", "--n", "3", "--target", "8"],
        &["run", "--n", "3", "--iterations", "-1"],
        &["run", "--n", "3", "--target", "5", "--random-target"],
        &["run", "--n", "3", "--dense-dump", "--format", "json"],
        &["plan", "--n", "0"],
    ];
    for args in cases {
        let o = grover(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn random_target_follows_seed() {
    let a = grover(&["run", "--n", "4", "--random-target", "--seed", "3", "--shots", "200", "--format", "json", "--no-meta"]);
    let b = grover(&["run", "--n", "4", "--seed", "3", "--shots", "200", "--format", "json", "--no-meta"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn plan_rows() {
    let out = stdout(&grover(&["plan", "--n", "3"]));
    let row = out.lines().nth(1).unwrap();
    let cells: Vec<_> = row.split_whitespace().collect();
    assert_eq!(cells[..4], ["3", "8", "0.361367", "2"]);
    assert!((cells[4].parse::<f64>().unwrap() - 7.0 / 128.0).abs() < 1e-6);
    assert_eq!(cells[5..], ["0.125000", "yes"]);

    let out = stdout(&grover(&["plan", "--n", "2"]));
    let cells: Vec<_> = out.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(cells[3], "1");
    assert_eq!(cells[4], "0.000000");

    for rounding in ["round", "floor"] {
        let o = grover(&["plan", "--n", "1..12", "--rounding", rounding, "--format", "json"]);
        let rows: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(rows.len(), 12);
        assert!(rows.iter().all(|r| r["within_bound"] == true));
    }

    let csv = stdout(&grover(&["plan", "--n", "1..3", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn paper_example_passes_and_detects_floor() {
    let o = grover(&["paper-example"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("Prob_Failure = 7/128 = 0.0547"));
    assert!(out.contains("Prob_Success = 121/128 = 0.9453"));

    let o = grover(&["paper-example", "--rounding", "floor"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1));
    assert!(out.contains("MISMATCHES"));
    assert!(out.lines().any(|l| l.trim_start().starts_with("K ")), "{out}");
}
