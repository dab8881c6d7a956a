//! The `smtop` binary: output, determinism and exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn smtop(args: &[&str]) -> Output {
    smtop_with(args, None, &[])
}

fn smtop_with(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_smtop"));
    cmd.args(args)
        .env_remove("SMTOP_WINDOW")
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(text) = stdin {
        pipe.write_all(text.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write_temp(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn sphere_of_the_coin() {
    let coin = fixture("coin.space");
    let o = smtop(&["sphere", &coin, "0", "1", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "{0}");
    let o = smtop(&["sphere", &coin, "0", "3/2", "1/2"]);
    assert_eq!(stdout(&o).trim(), "{0, 1}");
    let o = smtop(&["--json", "sphere", &coin, "1", "1/2", "1/2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!(["1"]));
}

#[test]
fn entourage_counts_pairs() {
    let o = smtop(&["entourage", &fixture("dice.space"), "3/2", "1/2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("16 pairs\n"));
}

#[test]
fn output_is_deterministic() {
    let (ecart, coin, dice) = (fixture("naturals.ecart"), fixture("coin.space"), fixture("dice.space"));
    let runs = [
        vec!["verify", "theorems", "--trials", "50", "--seed", "7"],
        vec!["--json", "family", &ecart],
        vec!["product", &coin, &dice],
    ];
    for args in runs {
        let a = smtop(&args);
        let b = smtop(&args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seeds_change_the_trials_but_not_the_verdict() {
    for seed in ["0", "1", "12345"] {
        let o = smtop(&["verify", "theorems", "--trials", "100", "--seed", seed]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).starts_with(&format!("seed {seed}\n")));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn window_comes_from_the_environment() {
    let ecart = fixture("naturals.ecart");
    let o = smtop(&["ecart-sphere", &ecart, "1", "2"]);
    assert_eq!(stdout(&o).trim(), "S \\ {2, 3}  [1..10: 1 4 5 6 7 8 9 10]");
    let o = smtop_with(&["ecart-sphere", &ecart, "1", "2"], None, &[("SMTOP_WINDOW", "5")]);
    assert_eq!(stdout(&o).trim(), "S \\ {2, 3}  [1..5: 1 4 5]");
}

#[test]
fn reads_standard_input() {
    let text = std::fs::read_to_string(fixture("coin.space")).unwrap();
    let o = smtop_with(&["sphere", "-", "0", "2", "1/2"], Some(&text), &[]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "{0, 1}");
}

#[test]
fn checking_commands_fail_with_one() {
    let o = smtop(&["validate", &fixture("menger_violation.space")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("SM-IVm (product): FAIL witness"));
    assert!(stdout(&o).ends_with("result: FAIL\n"));

    let sys = fixture("n1_failing.system");
    let o = smtop(&["classify", &sys]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdict: V_D"));
    let o = smtop(&["symmetric", &sys]);
    assert_eq!(code(&o), 1);
}

#[test]
fn input_errors_have_distinct_codes() {
    let coin = fixture("coin.space");
    // unreadable, malformed, bad arguments
    assert_eq!(code(&smtop(&["validate", "/nonexistent/x.space"])), 2);
    assert_eq!(code(&smtop(&["sphere", &coin, "0", "1/0", "1"])), 2);
    assert_eq!(code(&smtop(&["sphere", &coin, "0"])), 2);
    assert_eq!(code(&smtop(&["no-such-command"])), 2);
    let broken = write_temp("{ \"schema\": 1, ");
    assert_eq!(code(&smtop(&["validate", broken.path().to_str().unwrap()])), 2);
    let zero_denominator = write_temp(r#"{"schema": 1, "points": ["a", "b"], "entries": [{"p": "a", "q": "b", "fn": {"kind": "step", "at": "1/0"}}]}"#);
    assert_eq!(code(&smtop(&["validate", zero_denominator.path().to_str().unwrap()])), 2);

    // well-formed JSON of the wrong shape
    let shape = write_temp(r#"{"schema": 1, "points": ["a"], "entries": 3}"#);
    assert_eq!(code(&smtop(&["validate", shape.path().to_str().unwrap()])), 3);
    assert_eq!(code(&smtop(&["sphere", &fixture("n1_failing.system"), "a", "1", "1"])), 3);

    // well-formed and well-shaped but not a valid space
    let asymmetric = write_temp(
        r#"{"schema": 1, "metric": {"points": ["a", "b"], "kind": "step", "distances": [[0, 1], [2, 0]]}}"#,
    );
    let o = smtop(&["validate", asymmetric.path().to_str().unwrap()]);
    assert_eq!(code(&o), 4, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&smtop(&["sphere", &coin, "7", "1", "1"])), 4);
    assert_eq!(code(&smtop(&["sphere", &coin, "0", "0", "1"])), 4);
}

#[test]
fn worked_examples_pass() {
    let o = smtop(&["paper-examples"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 4);
}

#[test]
fn systems_round_trip_through_files() {
    let o = smtop(&["family", &fixture("dice.space"), "--emit", "system"]);
    assert_eq!(code(&o), 0);
    let file = write_temp(&stdout(&o));
    let path = file.path().to_str().unwrap();
    assert!(stdout(&smtop(&["classify", path])).contains("verdict: Top"));
    assert_eq!(
        stdout(&smtop(&["closure", path, "3"])),
        stdout(&smtop(&["closure", &fixture("dice.space"), "3"]))
    );
}

#[test]
fn products_of_each_kind() {
    let ecart = fixture("naturals.ecart");
    let o = smtop(&["product", &ecart, &ecart, "--emit", "classification"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("N0: PASS"));
    let sys = fixture("n1_failing.system");
    let o = smtop(&["product", &sys, &sys, "--emit", "classification"]);
    assert!(stdout(&o).contains("verdict: V_D"));
    let o = smtop(&["product", &sys, &fixture("coin.space")]);
    assert_eq!(code(&o), 3);
}
