use std::process::{Command, Output};

use autarky::{parse_dimacs, ClauseSet};

fn autarky(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autarky"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn generate_prints_dimacs() {
    let out = autarky(&["generate", "--family", "units-pairs", "--n", "2"]);
    assert!(out.status.success());
    assert_eq!(
        parse_dimacs(&stdout(&out)).unwrap(),
        ClauseSet::from_ints(&[&[1][..], &[-1], &[2], &[-2]])
    );
}

#[test]
fn solve_file_writes_assignment_kernel_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.cnf");
    std::fs::write(&path, "c example\np cnf 3 4\n1 0\n-1 0\n1 2 0\n2 3 0\n").unwrap();
    for algorithm in ["a0", "a1", "abs", "a01", "brute"] {
        let out = autarky(&["solve", path.to_str().unwrap(), "--algorithm", algorithm, "--verify"]);
        assert!(out.status.success(), "{algorithm}");
        let text = stdout(&out);
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("v ") && lines[0].ends_with(" 0"));
        assert_eq!(lines[0].split_whitespace().count(), 4, "{algorithm}: two literals");
        let kernel = parse_dimacs(&lines[1..lines.len() - 1].join("\n")).unwrap();
        assert_eq!(kernel, ClauseSet::from_ints(&[&[1][..], &[-1]]));
        let stats: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
        assert_eq!(stats["algorithm"], algorithm);
        assert_eq!(stats["autarky_size"], 2);
        assert_eq!(stats["lean_kernel_clauses"], 2);
        assert_eq!(
            stats["oracle_calls"].as_array().unwrap().len() as u64,
            stats["total_calls"].as_u64().unwrap()
        );
    }
}

#[test]
fn stats_go_to_file_when_asked() {
    let dir = tempfile::tempdir().unwrap();
    let stats = dir.path().join("stats.json");
    let out = autarky(&[
        "solve",
        "--family",
        "mixed",
        "--n",
        "5",
        "--stats",
        stats.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(!stdout(&out).contains('{'));
    let record: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&stats).unwrap()).unwrap();
    assert_eq!(record["n"], 5);
}

#[test]
fn empty_autarky_prints_bare_v_line() {
    let out = autarky(&["solve", "--family", "units-pairs", "--n", "3", "--oracle", "adversarial"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("v 0"));
}

#[test]
fn compare_reports_worst_cases() {
    let out = autarky(&["compare", "--family", "units-pairs", "--n", "9", "--oracle", "adversarial"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let calls = |name: &str| -> usize {
        let row = text.lines().find(|l| l.starts_with(name)).unwrap();
        row.split_whitespace().nth(1).unwrap().parse().unwrap()
    };
    assert_eq!(calls("a0 "), 9);
    assert_eq!(calls("a1 "), 1);
    assert_eq!(calls("a01 "), 3);
}

#[test]
fn parse_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cnf");
    std::fs::write(&path, "p cnf 1 1\n1 -1 0\n").unwrap();
    let out = autarky(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(autarky(&["solve", "--algorithm", "a7", "--family", "units", "--n", "1"]).status.code(), Some(1));
    assert_eq!(autarky(&["solve", "--family", "cubes", "--n", "1"]).status.code(), Some(1));
}

#[test]
fn adversarial_policy_respects_the_limit() {
    let out = autarky(&["solve", "--family", "units", "--n", "14", "--oracle", "adversarial"]);
    assert_eq!(out.status.code(), Some(1));
    let out = autarky(&[
        "solve", "--family", "units", "--n", "14", "--oracle", "adversarial", "--verify-limit", "14",
    ]);
    assert!(out.status.success());
}
