use std::path::PathBuf;
use std::process::{Command, Output};

fn spintail(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spintail"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn series_text_listing() {
    let o = spintail(&[
        "series", "theta_f", "--k", "2", "--order", "14", "--format", "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("1 - q - q^4 + q^7 + q^13"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn series_json_schema() {
    let o = spintail(&[
        "series", "poch_inf", "--c", "1", "--order", "6", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["variable"], "q");
    assert_eq!(v["shift"], 0);
    assert_eq!(v["order"], 6);
    let nums: Vec<i64> = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c[0].as_i64().unwrap())
        .collect();
    assert_eq!(nums, [1, -1, -1, 0, 0, 1]);
    assert!(v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c[1] == 1));
}

#[test]
fn series_params_with_equals_and_monomials() {
    let a = spintail(&[
        "series",
        "theta_general",
        "--a=-q^2",
        "--b",
        "-q",
        "-N",
        "10",
    ]);
    let b = spintail(&["series", "poch_inf", "--c", "1", "--order", "10"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn series_csv() {
    let o = spintail(&[
        "series",
        "false_theta",
        "--k",
        "2",
        "-N",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<_> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines[0], "exponent,numerator,denominator");
    assert_eq!(lines.len(), 5);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(spintail(&["series", "nosuch"]).status.code(), Some(2));
    assert_eq!(
        spintail(&["series", "theta_f", "--k", "two"]).status.code(),
        Some(2)
    );
    assert_eq!(
        spintail(&["series", "theta_f", "--k", "2", "--bogus", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        spintail(&["verify", "builtin:nosuch"]).status.code(),
        Some(2)
    );
    assert_eq!(
        spintail(&["jones", "--f", "0", "--n", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(spintail(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn jones_color_zero_is_one() {
    let o = spintail(&["jones", "--f", "3", "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn jones_normalized_matches_euler_product() {
    let o = spintail(&[
        "jones",
        "--f",
        "3",
        "--n",
        "4",
        "--normalized",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let got: Vec<i64> = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .take(5)
        .map(|c| c[0].as_i64().unwrap())
        .collect();
    // (q;q)_inf = 1 - q - q^2 + q^5 + ...
    assert_eq!(got, [1, -1, -1, 0, 0]);
}

#[test]
fn verify_builtin_suites() {
    let o = spintail(&["verify", "builtin:andrews-gordon", "--order", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = spintail(&["verify", "builtin:oracle-small", "--jobs", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[skipped] tet-2"));
}

#[test]
fn verify_reports_first_mismatch() {
    let path = scratch("wrong.json");
    std::fs::write(
        &path,
        r#"{ "name": "wrong", "cases": [
            { "id": "good", "kind": "identity", "order": 10,
              "lhs": { "series": "theta_f", "params": { "k": 1 } },
              "rhs": { "series": "poch_inf", "params": { "c": 1 } } },
            { "id": "bad", "kind": "identity", "order": 10,
              "lhs": { "series": "poch_inf", "params": { "c": 1 } },
              "rhs": { "coefficients": [1, -1, -1, 0, 0, 1, 0, 2], "shift": 0 } }
        ] }"#,
    )
    .unwrap();
    let out = scratch("wrong-report.json");
    let o = spintail(&[
        "verify",
        path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("first mismatch at q^7"),
        "{}",
        stdout(&o)
    );
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["passed"], 1);
    assert_eq!(report["failed"], 1);
    assert_eq!(report["cases"][0]["status"], "pass");
    assert_eq!(report["cases"][1]["status"], "fail");
}

#[test]
fn verify_rejects_malformed_suites() {
    let path = scratch("malformed.json");
    std::fs::write(
        &path,
        r#"{ "name": "x", "cases": [ { "id": "a", "kind": "nonsense" } ] }"#,
    )
    .unwrap();
    assert_eq!(
        spintail(&["verify", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let dup = scratch("duplicate.json");
    let case = r#"{ "id": "a", "kind": "oracle", "oracle": "theta", "params": { "n": 1 } }"#;
    std::fs::write(
        &dup,
        format!(r#"{{ "name": "x", "cases": [{case}, {case}] }}"#),
    )
    .unwrap();
    assert_eq!(
        spintail(&["verify", dup.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_is_deterministic_across_jobs() {
    let run = |jobs: &str| {
        let o = spintail(&[
            "verify",
            "builtin:torus-tails",
            "--jobs",
            jobs,
            "--format",
            "json",
        ]);
        assert_eq!(o.status.code(), Some(0));
        stdout(&o)
    };
    let one = run("1");
    assert_eq!(one, run("3"));
    assert_eq!(one, run("8"));
}

#[test]
fn stabilization_report_in_json() {
    let o = spintail(&["verify", "builtin:torus-tails", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let case = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "torus-f5")
        .unwrap();
    let r = &case["report"];
    assert_eq!(r["generator"], "torus_jones");
    assert_eq!(r["params"]["f"], 5);
    assert_eq!(r["n_max"], 12);
    assert!(r["verdicts"].as_array().unwrap().iter().all(|b| b == true));
    assert_eq!(r["tail"]["variable"], "q");
}

#[test]
fn oracle_reads_network_from_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let help = spintail(&["oracle", "--help"]);
    assert_eq!(help.status.code(), Some(0));
    let mut child = Command::new(env!("CARGO_BIN_EXE_spintail"))
        .args(["oracle", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"not a network")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn list_names_everything() {
    let o = spintail(&["list"]);
    let text = stdout(&o);
    for name in ["theta_f", "lambda", "torus_jones", "builtin:products"] {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn oracle_evaluates_a_file() {
    let path = scratch("loop2.net");
    std::fs::write(&path, "box a 2\narc a.t[0..1] a.b[0..1]\n").unwrap();
    let o = spintail(&["oracle", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["variable"], "v");
    assert_eq!(
        v["terms"],
        serde_json::json!([[-4, 1, 1], [0, 1, 1], [4, 1, 1]])
    );
    let small = spintail(&["oracle", path.to_str().unwrap(), "--max-color", "1"]);
    assert_eq!(small.status.code(), Some(2));
}
