use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

/// Runs the CLI in-process and returns (exit code, stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("ftsdist").chain(args.iter().copied());
    let code = ftsdist_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn distance_matrix_of_four_state() {
    let (code, out, err) = run(&["distance", &fixture("four_state.json")]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(
        out,
        "\ts1\ts2\ts3\ts4\n\
         s1\t0\t0.9\t0.9\t1\n\
         s2\t0.9\t0\t0.6\t1\n\
         s3\t0.9\t0.6\t0\t1\n\
         s4\t1\t1\t1\t0\n"
    );
}

#[test]
fn distance_as_json() {
    let (code, out, _) = run(&["distance", &fixture("four_state.json"), "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["states"][1], "s2");
    assert_eq!(v["matrix"][1][2], "0.6");
}

#[test]
fn trace_stops_after_three_applications() {
    let (code, out, _) = run(&["distance", &fixture("four_state.json"), "--trace"]);
    assert_eq!(code, 0);
    let headers: Vec<&str> = out.lines().filter(|l| l.starts_with("# ")).collect();
    assert_eq!(headers, ["# d0", "# d1", "# d2", "# d3", "# fixpoint after 3 applications (d3 = d2)"]);

    let (_, out, _) = run(&["distance", &fixture("four_state.json"), "--trace", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let iterates = v["iterates"].as_array().unwrap();
    assert_eq!(iterates.len(), 4);
    assert_eq!(iterates[2], iterates[3]);
}

#[test]
fn quotient_at_0_6() {
    let (code, out, _) = run(&["quotient", &fixture("four_state.json"), "--lambda", "0.6"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{s1}\n{s2, s3}\n{s4}\n");
}

#[test]
fn bisim_reports_the_distance() {
    let (code, out, _) = run(&["bisim", &fixture("four_state.json"), "s2", "s3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "not-bisimilar\td_f(s2, s3) = 0.6\n");
    let (_, out, _) = run(&["bisim", &fixture("four_state.json"), "s1", "s1"]);
    assert!(out.starts_with("bisimilar\t"));
    let (code, _, err) = run(&["bisim", &fixture("four_state.json"), "s1", "s9"]);
    assert_eq!(code, 1);
    assert!(err.contains("s9"));
}

#[test]
fn similarity_matrix() {
    let (code, out, _) = run(&["similar", &fixture("four_state.json")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().nth(2).unwrap(), "s2\t0.1\t1\t0.4\t0");
}

#[test]
fn compose_round_trips_through_validate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("par.json");
    let target = path.display().to_string();
    let (code, out, _) = run(&["compose", &fixture("four_state.json"), "--op", "parallel", "--out", &target]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let (code, out, _) = run(&["validate", &target]);
    assert_eq!(code, 0);
    assert!(out.starts_with("ok: 16 states, 1 labels"), "{out}");
    let (_, out, _) = run(&["bisim", &target, "s4|s3", "s3|s4"]);
    assert!(out.starts_with("bisimilar\t"));
}

#[test]
fn compose_from_a_pair_keeps_the_reachable_part() {
    let (code, out, _) =
        run(&["compose", &fixture("four_state.json"), "--op", "parallel", "--from", "s2", "s3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["states"], serde_json::json!(["s2|s3", "s3|s4", "s4|s4"]));
    let (_, out, _) = run(&["compose", &fixture("four_state.json"), "--op", "product"]);
    assert!(out.contains("\"s1||s2\""));
}

#[test]
fn lift_named_distributions() {
    let metric = fixture("discrete.json");
    let file = fixture("two_points.json");
    let lift = |mu: &str, eta: &str| run(&["lift", &file, "--mu", mu, "--eta", eta, "--metric", &metric]);
    assert_eq!(lift("mu", "theta").1, "0.5\n");
    assert_eq!(lift("mu", "eta").1, "1\n");
    assert_eq!(lift("eta", "eta").1, "0\n");
    let (code, _, err) = lift("mu", "nu");
    assert_eq!(code, 1);
    assert!(err.contains("nu"));
}

#[test]
fn validation_errors_exit_with_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"states": ["p"], "labels": ["a"], "transitions": [
            {"from": "p", "label": "a", "to": {"q": "0.5"}},
            {"from": "p", "label": "a", "to": {"p": "abc"}}
        ]}"#,
    )
    .unwrap();
    let (code, out, err) = run(&["validate", &path.display().to_string()]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert_eq!(err.lines().count(), 2, "{err}");
    assert!(err.contains("`q`") && err.contains("abc"));

    let (code, _, err) = run(&["validate", "/nonexistent/system.json"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: "));
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["distance"]).0, 2);
    assert_eq!(run(&["quotient", &fixture("four_state.json"), "--lambda", "1.5"]).0, 2);
    assert_eq!(run(&["compose", &fixture("four_state.json"), "--op", "sum"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["distance", "--trace"],
        vec!["similar"],
        vec!["compose", "--op", "parallel"],
    ] {
        let mut full = args.clone();
        let file = fixture("four_state.json");
        full.insert(1, &file);
        assert_eq!(run(&full).1, run(&full).1);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ftsdist");
    let ok = Command::new(bin).args(["validate", &fixture("four_state.json")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let usage = Command::new(bin).arg("frobnicate").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let missing = Command::new(bin).args(["distance", "missing.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
}
