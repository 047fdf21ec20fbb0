//! End-to-end checks of the binary: byte-identical determinism across
//! repeated invocations, the documented example outputs, exit codes,
//! and JSON round-trips.

use std::io::Write;
use std::process::{Command, Output};

use num_bigint::BigInt;
use qpart_core::ferrers::{rank_dist, FerrersBoard};
use qpart_core::lattice::LaurentPolyZ;
use qpart_core::matgf::PivotList;

fn qpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = qpart(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

/// A 4-dimensional code in the binary 2x3 matrix space whose words all
/// have zero third column.
fn padded_code_file() -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    let gens = [
        [[1, 0, 0], [0, 0, 0]],
        [[0, 1, 0], [0, 0, 0]],
        [[0, 0, 0], [1, 0, 0]],
        [[0, 0, 0], [0, 1, 0]],
    ];
    let mut text = String::from("2 3 2 4\n");
    for g in gens {
        text.push_str("\n2 3 2\n");
        for row in g {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            text.push_str(&cells.join(" "));
            text.push('\n');
        }
    }
    f.write_all(text.as_bytes()).expect("write");
    f.flush().expect("flush");
    f
}

fn zero_code_file() -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(b"2 2 2 0\n").expect("write");
    f.flush().expect("flush");
    f
}

#[test]
fn criterion_10_byte_identical_runs() {
    let code = padded_code_file();
    let path = code.path().to_str().expect("utf-8 path");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["selftest"],
        vec!["--seed", "7", "selftest"],
        vec!["--format", "json", "selftest"],
        vec!["kraw", "--partition", "rank", "--q", "2", "--n", "2", "--m", "2"],
        vec!["kraw", "--partition", "rowspace", "--q", "3", "--n", "2", "--m", "2"],
        vec!["kraw", "--partition", "pivot", "--q", "2", "--n", "3", "--m", "2"],
        vec!["kraw", "--partition", "rpivot", "--q", "2", "--n", "2", "--m", "2"],
        vec!["--format", "csv", "kraw", "--partition", "pivot", "--q", "2", "--n", "2", "--m", "2"],
        vec!["dualpartition", "--partition", "pivot", "--q", "2", "--n", "2", "--m", "2"],
        vec!["ferrers", "rankdist", "--board", "1,2,4,4,5", "--r", "3"],
        vec!["--format", "json", "ferrers", "rook", "--board", "1,2", "--r", "1"],
        vec!["ferrers", "stirling", "--m", "4", "--r", "2"],
        vec!["macwilliams", "--file", path, "--dist", "pivot"],
        vec!["code", "analyze", "--file", path, "--dist", "rowspace"],
        vec!["code", "dual", "--file", path],
        vec!["code", "extremal", "--file", path, "--u-dim", "1", "--pivot", "2,3"],
        vec!["preservers", "classify", "--kind", "pivot", "--q", "2", "--n", "2", "--m", "2"],
        vec![
            "preservers", "extend", "--file", path, "--map", "left-block-transpose",
            "--kind", "rank",
        ],
    ];
    for args in &invocations {
        let first = qpart(args);
        let second = qpart(args);
        assert!(
            first.status.success(),
            "command {args:?} failed: {}",
            String::from_utf8_lossy(&first.stderr)
        );
        assert_eq!(
            first.stdout, second.stdout,
            "output of {args:?} differs between runs"
        );
        assert_eq!(first.status.code(), second.status.code());
    }
    println!(
        "criterion 10 (byte-identical output over {} invocations): PASS",
        invocations.len()
    );
}

#[test]
fn documented_examples() {
    assert_eq!(
        stdout_of(&["ferrers", "rankdist", "--board", "1,2", "--r", "1"]),
        "2q^2 - q - 1\n"
    );

    // The rank table at q=2, 2x2 is 3x3 and its first row is all ones.
    let table = stdout_of(&[
        "--format", "csv", "kraw", "--partition", "rank", "--q", "2", "--n", "2", "--m", "2",
    ]);
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "block,0,1,2");
    assert_eq!(lines[1], "0,1,1,1");

    // The zero code occupies the single all-zero block.
    let zero = zero_code_file();
    let out = stdout_of(&[
        "--format",
        "csv",
        "code",
        "analyze",
        "--file",
        zero.path().to_str().expect("utf-8 path"),
        "--dist",
        "rowspace",
    ]);
    assert_eq!(out, "rowspace-block,count\n0,1\n");
}

#[test]
fn exit_codes() {
    // Usage error: unknown flag.
    let out = qpart(&["kraw", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));

    // Usage error: malformed input file.
    let mut bad = tempfile::NamedTempFile::new().expect("temp file");
    bad.write_all(b"not a code file\n").expect("write");
    bad.flush().expect("flush");
    let out = qpart(&[
        "code",
        "dual",
        "--file",
        bad.path().to_str().expect("utf-8 path"),
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Budget exhaustion.
    let out = qpart(&[
        "--budget", "100", "preservers", "classify", "--kind", "rowspace", "--q", "2", "--n",
        "2", "--m", "2",
    ]);
    assert_eq!(out.status.code(), Some(3));

    // Success.
    let out = qpart(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_round_trips() {
    // Polynomial coefficients rebuild the exact polynomial.
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "--format", "json", "ferrers", "rankdist", "--board", "1,2,4", "--r", "2",
    ]))
    .expect("valid json");
    assert_eq!(doc["schema"], "qpart/1");
    let coeffs = doc["coefficients"].as_object().expect("object");
    let rebuilt = LaurentPolyZ::from_terms(coeffs.iter().map(|(e, c)| {
        (
            e.parse::<i64>().expect("exponent"),
            c.as_str().expect("string").parse::<BigInt>().expect("coefficient"),
        )
    }));
    let board = FerrersBoard::parse("1,2,4").expect("monotone");
    assert_eq!(rebuilt, rank_dist(&board, 2));

    // Board heights round-trip through their display form.
    assert_eq!(board.to_string(), "1,2,4");

    // Pivot-list row labels of a table parse back to equal values.
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "--format", "json", "kraw", "--partition", "pivot", "--q", "2", "--n", "2", "--m", "2",
    ]))
    .expect("valid json");
    let rows = doc["rows"].as_array().expect("array");
    let m = 2usize;
    let mut labels: Vec<PivotList> = Vec::new();
    for row in rows {
        let s = row["label"].as_str().expect("string");
        let parsed = if s == "()" {
            PivotList::new(m, &[]).expect("empty")
        } else {
            let idx: Vec<usize> = s
                .split(',')
                .map(|t| t.parse().expect("index"))
                .collect();
            PivotList::new(m, &idx).expect("increasing")
        };
        assert_eq!(parsed.to_string(), s);
        labels.push(parsed);
    }
    assert_eq!(labels, PivotList::all(m));
}
