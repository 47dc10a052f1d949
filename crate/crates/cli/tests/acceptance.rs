//! Acceptance criteria, one line each. Runs without the test harness so the
//! lines always appear in the output; exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};

use demazure_core::cache::CharacterCache;
use demazure_core::demazure::demazure_character;
use demazure_core::theorems::{run_suites, GridConfig, RunOptions, Suite, VerificationReport};
use demazure_core::{CartanType, RootSystem};
use num_bigint::BigInt;

struct Outcome {
    ok: bool,
    detail: String,
}

fn run(
    cfg: &GridConfig,
    suites: &[Suite],
    cache: &CharacterCache,
    fault: bool,
) -> Vec<VerificationReport> {
    let opts = RunOptions {
        inject_fault: fault,
        seed: 0,
        timing: false,
    };
    run_suites(cfg, suites, cache, opts).expect("grid runs")
}

fn all_pass(reports: &[VerificationReport]) -> Outcome {
    let failed: Vec<&VerificationReport> = reports.iter().filter(|r| !r.passed).collect();
    let mut detail = format!("{} cases, {} failed", reports.len(), failed.len());
    if let Some(f) = failed.first() {
        detail += &format!(
            "; first: {} {} {}",
            f.suite,
            f.case_id,
            f.witness.as_deref().unwrap_or("")
        );
    }
    Outcome {
        ok: !reports.is_empty() && failed.is_empty(),
        detail,
    }
}

fn types_present(reports: &[VerificationReport], types: &[&str]) -> bool {
    types
        .iter()
        .all(|t| reports.iter().any(|r| r.cartan_type == *t))
}

fn dim_d1_theta(t: &str) -> BigInt {
    let rs = RootSystem::new(t.parse::<CartanType>().unwrap()).unwrap();
    demazure_character(&rs, 1, rs.theta()).unwrap().dim()
}

fn main() -> ExitCode {
    let cfg = GridConfig::default();
    let cache = CharacterCache::in_memory();
    let four = ["A1", "A2", "B2", "G2"];
    let two = ["A1", "A2"];
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();

    let r = run(&cfg, &[Suite::Finite], &cache, false);
    let mut o = all_pass(&r);
    o.ok &= types_present(&r, &four) && cfg.finite.max_sum == 4;
    results.push((1, "finite characters vs Weyl dimension and Freudenthal", o));

    let r = run(&cfg, &[Suite::Dlk], &cache, false);
    let mut o = all_pass(&r);
    let (a1, a2) = (dim_d1_theta("A1"), dim_d1_theta("A2"));
    o.ok &= types_present(&r, &four) && a1 == BigInt::from(4) && a2 == BigInt::from(9);
    o.detail += &format!("; dim D(1,θ) = {a1} (A1), {a2} (A2)");
    results.push((2, "graded decomposition of D(ℓ,kθ), k ≤ 3, k ≤ ℓ ≤ 2k", o));

    let r = run(&cfg, &[Suite::Operators], &cache, false);
    let mut o = all_pass(&r);
    o.ok &= types_present(&r, &four) && cfg.operators.max_length == 6;
    results.push((3, "Demazure operator laws up to length 6 on e^ρ̂", o));

    let r = run(&cfg, &[Suite::Length], &cache, false);
    let mut o = all_pass(&r);
    o.ok &= types_present(&r, &four) && cfg.length.max_theta == 3;
    results.push((4, "length additivity of anti-dominant translations", o));

    let r = run(&cfg, &[Suite::Exactfg], &cache, false);
    let mut o = all_pass(&r);
    let regimes: Vec<bool> = ["1", "2", "3"]
        .iter()
        .map(|n| {
            r.iter()
                .any(|x| x.inputs.get("regime").map(String::as_str) == Some(*n))
        })
        .collect();
    o.ok &= types_present(&r, &two) && regimes.iter().all(|b| *b);
    results.push((5, "graded exact sequences, all three regimes", o));

    let r = run(&cfg, &[Suite::Hchar], &cache, false);
    let mut o = all_pass(&r);
    let two_part = two.iter().all(|t| {
        r.iter()
            .any(|x| x.cartan_type == *t && x.inputs["levels"].contains(','))
    });
    o.ok &= types_present(&r, &two) && two_part;
    results.push((
        6,
        "product formula for restricted characters, incl. two-part cases",
        o,
    ));

    let r = run(&cfg, &[Suite::Schur], &cache, false);
    let mut o = all_pass(&r);
    o.ok &= types_present(&r, &two) && cfg.schur.max_n == 5;
    results.push((7, "multiplicity dominance for partitions of n ≤ 5", o));

    let r = run(&cfg, &[Suite::Cvk, Suite::Cv], &cache, false);
    let o = all_pass(&r);
    results.push((8, "level constancy and the factor-out identity modulo δ", o));

    let r = run(&cfg, &[Suite::Xi, Suite::EnumS], &cache, false);
    let mut o = all_pass(&r);
    o.ok &= cfg.enum_s.max_r == 6 && cfg.enum_s.max_s == 6;
    results.push((9, "ξ-tuple sizes and S(r,s) counts", o));

    // every suite, with a +1 fault in one compared coefficient per case
    let r = run(&cfg, &Suite::ALL, &cache, true);
    let caught = r
        .iter()
        .filter(|x| !x.passed && x.witness.is_some())
        .count();
    let cli = Command::new(env!("CARGO_BIN_EXE_demazure"))
        .args([
            "verify",
            "--suite",
            "dlk,exactfg",
            "--type",
            "A1",
            "--self-test",
            "--no-cache",
        ])
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8_lossy(&cli.stdout);
    let cli_ok = cli.status.code() == Some(1) && stdout.contains("witness:");
    results.push((
        10,
        "injected faults are detected with a witness",
        Outcome {
            ok: !r.is_empty() && caught == r.len() && cli_ok,
            detail: format!(
                "{caught} of {} faults caught; CLI exit {:?}",
                r.len(),
                cli.status.code()
            ),
        },
    ));

    let mut failures = 0;
    for (n, what, o) in &results {
        let status = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {n:>2}: {status}  {what} ({})", o.detail);
        if !o.ok {
            failures += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        results.len() - failures,
        results.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
