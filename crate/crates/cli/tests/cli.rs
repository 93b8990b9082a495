use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl2dist")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn mul_examples() {
    let o = run(&["mul", "e(1)", "f(1)", "--ring", "Z"]);
    assert_eq!(stdout(&o), "f(1)e(1) + h(1)");
    assert_eq!(stdout(&run(&["mul", "e(2)", "e(3)", "--ring", "Z"])), "10 e(5)");
    assert_eq!(stdout(&run(&["mul", "e(3)", "f(1)", "--p", "3"])), "f(1)e(3) + (h(1)+1) e(2)");
    assert_eq!(stdout(&run(&["mul", "e(5)", "1", "--p", "5", "--ring", "Zp-local"])), "e(5)");
}

#[test]
fn mul_parse_error_is_usage() {
    assert_eq!(run(&["mul", "e(1", "f(1)"]).status.code(), Some(2));
    assert_eq!(run(&["mul", "e(1)", "f(1)", "--ring", "Fp"]).status.code(), Some(2));
}

#[test]
fn straighten_examples() {
    assert_eq!(stdout(&run(&["straighten", "e0 f0", "--p", "3"])), "f0 e0 + X0 [cross-check: OK]");
    assert_eq!(stdout(&run(&["straighten", "f0 e0", "--p", "3"])), "f0 e0 [cross-check: OK]");
    let o = run(&["straighten", "e1 f0", "--p", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("[cross-check: OK]"));
    assert_eq!(run(&["straighten", "x1", "--p", "3"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "relations", "--p", "3", "--kmax", "1", "--nmax", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(run(&["verify", "idempotent", "--p", "5", "--kmax", "2"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "relations", "--p", "4"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "casimir", "--p", "3", "--h-range=5:1"]).status.code(), Some(2));
}

#[test]
fn verify_congruence_p7() {
    let o = run(&["verify", "congruence", "--p", "7", "--h-range=-98:98", "--jobs", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn records_format_is_one_json_object_per_line() {
    let o = run(&["verify", "minpoly", "--p", "3,5", "--format", "records"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    for l in lines {
        assert!(l.starts_with('{') && l.contains("\"verdict\":\"pass\""), "{l}");
    }
}

#[test]
fn records_are_deterministic() {
    let args = ["verify", "frobenius", "--p", "3", "--kmax", "1", "--seed", "7", "--format", "records"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn zero_budget_skips() {
    let o = run(&["verify", "casimir", "--p", "3", "--time-budget", "0", "--format", "records"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().all(|l| l.contains("\"verdict\":\"skip\"")));
}
