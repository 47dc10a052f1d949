use std::process::{Command, Output};

use demazure_core::CharElement;

fn demazure(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_demazure"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn char_examples() {
    let o = demazure(&["char", "--type", "A1", "--weight", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "e^(2) + e^0 + e^(-2)\ndim 3\n");
    let o = demazure(&["char", "--type", "A2", "--weight", "0,0"]);
    assert_eq!(stdout(&o), "e^0\ndim 1\n");
    let o = demazure(&["char", "--type", "G2", "--weight", "0,1"]);
    assert!(stdout(&o).ends_with("dim 7\n"));
}

#[test]
fn char_json_round_trips() {
    let o = demazure(&[
        "char", "--type", "B2", "--weight", "1,1", "--format", "json",
    ]);
    let c = CharElement::from_json(&stdout(&o)).unwrap();
    assert_eq!(c.coefficient_sum(), 16.into());
}

#[test]
fn demazure_graded() {
    let o = demazure(&[
        "demazure",
        "--type",
        "A1",
        "--level",
        "1",
        "--weight",
        "2",
        "--graded",
        "--no-cache",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "q^0: dim 3, q^1: dim 1\n");
    let o = demazure(&[
        "demazure",
        "--type",
        "A2",
        "--level",
        "3",
        "--weight",
        "0,0",
        "--graded",
        "--no-cache",
    ]);
    assert_eq!(stdout(&o), "q^0: dim 1\n");
    let o = demazure(&[
        "demazure",
        "--type",
        "A1",
        "--level",
        "1",
        "--weight",
        "2",
        "--format",
        "latex",
        "--graded",
        "--no-cache",
    ]);
    assert!(
        stdout(&o).contains("q^{1}\\left(e^{0}\\right)"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn demazure_json_uses_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "demazure",
        "--type",
        "A2",
        "--level",
        "1",
        "--weight",
        "1,1",
        "--format",
        "json",
        "--cache-dir",
        d,
    ];
    let first = demazure(&args);
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = demazure(&args);
    assert_eq!(first.stdout, second.stdout);
    let c = CharElement::from_json(&stdout(&first)).unwrap();
    assert_eq!(c.coefficient_sum(), 9.into());
}

#[test]
fn gen_demazure() {
    // D(t_{−θ} · Λ0) in A1 is D(1, θ)
    let o = demazure(&[
        "gen-demazure",
        "--type",
        "A1",
        "--factors",
        "t[-2]:0|1",
        "--graded",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("q^0: dim 3, q^1: dim 1"), "{out}");
    assert!(out.ends_with("dim 4\n"));
}

#[test]
fn usage_errors_exit_with_two() {
    let o = demazure(&["char", "--type", "A2", "--weight", "1,x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 2"));
    assert_eq!(
        demazure(&["char", "--type", "Z9", "--weight", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        demazure(&["char", "--type", "A2", "--weight", "-1,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        demazure(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(demazure(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = demazure(&["verify", "--suite", "dlk", "--type", "A1", "--no-cache"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total"));
    let o = demazure(&["verify", "--all", "--no-cache"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = demazure(&[
        "verify",
        "--suite",
        "dlk",
        "--type",
        "A1",
        "--self-test",
        "--no-cache",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL dlk"));
}

#[test]
fn verify_output_is_reproducible() {
    let args = [
        "verify",
        "--suite",
        "random,xi",
        "--seed",
        "11",
        "--format",
        "json",
        "--no-cache",
    ];
    let a = demazure(&args);
    let b = demazure(&args);
    assert_eq!(a.stdout, b.stdout);
    let first = stdout(&a).lines().next().unwrap().to_string();
    assert!(first.contains("\"seed\":11"), "{first}");
    assert!(!first.contains("elapsed_ms"));
}

#[test]
fn verify_reads_grid_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.toml");
    std::fs::write(&path, "types = [\"G2\"]\n[dlk]\nmax_k = 1\n").unwrap();
    let o = demazure(&[
        "verify",
        "--suite",
        "dlk",
        "--grid",
        path.to_str().unwrap(),
        "-v",
        "--no-cache",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(
        out.lines().filter(|l| l.starts_with("PASS dlk G2")).count(),
        2,
        "{out}"
    );
    std::fs::write(&path, "[dlk]\nmax_k = \"x\"\n").unwrap();
    let o = demazure(&["verify", "--suite", "dlk", "--grid", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
