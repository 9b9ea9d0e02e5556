use jackpfq_cli::run;
use serde_json::Value;

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(std::iter::once("jackpfq").chain(args.iter().copied()));
    (out.code, serde_json::from_str(&out.stdout).unwrap_or(Value::Null))
}

#[test]
fn reports_are_versioned_and_echo_config() {
    let (code, v) = json(&["verify", "--theorem", "B", "--p", "1", "--q", "1", "--n", "2", "--maxdeg", "3", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["config"]["params"]["seed"], 7);
}

#[test]
fn same_seed_same_report() {
    let args = ["verify", "--theorem", "C", "--p", "2", "--q", "2", "--n", "2", "--maxdeg", "3", "--draws", "2"];
    assert_eq!(json(&args), json(&args));
}

#[test]
fn explicit_parameters_are_used() {
    let (code, v) = json(&["solve", "--theorem", "C", "--a", "-1/2,3", "--b", "5/3", "--alpha", "2", "--n", "2", "--maxdeg", "2"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["config"]["params"]["a"], serde_json::json!(["-1/2", "3"]));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["solve", "--theorem", "Z"],
        vec!["binom", "--lambda", "2,1", "--mu", "a", "--alpha", "1"],
        vec!["series", "build", "--p", "2", "--a", "1", "--n", "2"],
        vec!["jack", "expand", "--lambda", "2", "--n", "2", "--alpha", "0"],
    ] {
        let out = run(std::iter::once("jackpfq").chain(args.iter().copied()));
        assert_eq!(out.code, 1, "{args:?}: {}", out.stderr);
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("jackpfq-out-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = run(["jackpfq", "--out", p, "binom", "--lambda", "2,1", "--mu", "1", "--alpha", "2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["schema"], 1);
}
