//! Acceptance run: one PASS/FAIL line per criterion, exact arithmetic throughout.
//!
//! Criteria 1-9 run in-process at the full level. Criterion 10 drives the built
//! binary: full suite, smoke determinism, timing and fault injection.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use jackpfq_cli::suite::{run_criterion, Level, CRITERIA};
use jackpfq_cli::DEFAULT_SEED;
use serde_json::Value;

const FULL_BUDGET: Duration = Duration::from_secs(600);
const SMOKE_BUDGET: Duration = Duration::from_secs(30);

struct Outcome {
    passed: bool,
    detail: String,
}

fn jackpfq(args: &[&str]) -> (i32, String, String, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_jackpfq")).args(args).output().expect("spawn jackpfq");
    let elapsed = start.elapsed();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        elapsed,
    )
}

fn criterion(k: u32) -> Outcome {
    let checks = run_criterion(k, Level::Full, DEFAULT_SEED);
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
    match failed.first() {
        None if checks.is_empty() => Outcome { passed: false, detail: "no checks ran".into() },
        None => Outcome { passed: true, detail: format!("{} checks", checks.len()) },
        Some(c) => Outcome {
            passed: false,
            detail: format!("{}/{} failed, first {}: {}", failed.len(), checks.len(), c.id, c.detail),
        },
    }
}

fn suite_runs() -> Outcome {
    let mut problems = Vec::new();

    let (code, stdout, _, full_time) = jackpfq(&["suite", "full"]);
    let report: Value = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    if code != 0 || report["failed"] != 0 {
        problems.push(format!("suite full: exit {code}, failed {}", report["failed"]));
    }
    if report["schema"] != 1 {
        problems.push("suite full: missing schema 1".into());
    }
    if full_time > FULL_BUDGET {
        problems.push(format!("suite full took {full_time:.1?}"));
    }
    let (code, again, _, _) = jackpfq(&["suite", "full"]);
    if code != 0 || again != stdout {
        problems.push("suite full: reruns differ".into());
    }

    let (c1, s1, _, smoke_time) = jackpfq(&["suite", "smoke"]);
    let (c2, s2, _, _) = jackpfq(&["suite", "smoke"]);
    if c1 != 0 || c2 != 0 || s1 != s2 || s1.is_empty() {
        problems.push(format!("suite smoke: exits {c1}/{c2}, identical {}", s1 == s2));
    }
    if smoke_time > SMOKE_BUDGET {
        problems.push(format!("suite smoke took {smoke_time:.1?}"));
    }

    let (code, stdout, _, _) = jackpfq(&["suite", "smoke", "--inject-fault", "binom"]);
    let report: Value = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    let first = &report["first_failure"];
    if code != 2 || !first["id"].is_string() || !first["detail"].as_str().is_some_and(|d| d.contains("alpha=")) {
        problems.push(format!("fault injection: exit {code}, first failure {first}"));
    }

    if problems.is_empty() {
        Outcome {
            passed: true,
            detail: format!("full {full_time:.1?}, smoke {smoke_time:.1?}, deterministic, fault caught"),
        }
    } else {
        Outcome { passed: false, detail: problems.join("; ") }
    }
}

fn cli_examples() -> Outcome {
    let mut problems = Vec::new();
    let (code, out, _, _) = jackpfq(&["--format", "human", "jack", "expand", "--lambda", "2", "--n", "2", "--alpha", "1"]);
    if code != 0 || !out.contains("J_(2) = 2·m_(2) + 2·m_(1,1)") {
        problems.push(format!("jack expand: exit {code}, {out:?}"));
    }
    for args in [
        ["verify", "--theorem", "C", "--p", "2", "--q", "1", "--n", "1", "--maxdeg", "6"],
        ["verify", "--theorem", "A", "--p", "0", "--q", "0", "--n", "2", "--maxdeg", "3"],
    ] {
        let (code, _, _, _) = jackpfq(&args);
        if code != 0 {
            problems.push(format!("{}: exit {code}", args.join(" ")));
        }
    }
    let (code, _, err, _) = jackpfq(&["jack", "expand", "--lambda", "2,x", "--n", "2", "--alpha", "1"]);
    if code != 1 || !err.contains('x') {
        problems.push(format!("bad partition: exit {code}, {err:?}"));
    }
    let (code, _, err, _) = jackpfq(&["verify", "--theorem", "B", "--a", "1/0", "--n", "2"]);
    if code != 1 || !err.contains("1/0") {
        problems.push(format!("bad rational: exit {code}, {err:?}"));
    }
    if problems.is_empty() {
        Outcome { passed: true, detail: "examples and exit codes".into() }
    } else {
        Outcome { passed: false, detail: problems.join("; ") }
    }
}

fn main() -> ExitCode {
    let mut rows: Vec<(String, Outcome)> = Vec::new();
    for (k, title) in CRITERIA {
        rows.push((format!("criterion {k}: {title}"), criterion(k)));
    }
    rows.push(("criterion 10: suite determinism, timing, fault injection".into(), suite_runs()));
    rows.push(("cli: documented examples and exit codes".into(), cli_examples()));

    let mut failures = 0;
    for (name, o) in &rows {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("{tag} {name} ({})", o.detail);
        failures += usize::from(!o.passed);
    }
    println!("acceptance: {} passed, {failures} failed", rows.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
