//! End-to-end runs of the `dirmix` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dirmix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirmix"))
        .args(args)
        .env_remove("DIRMIX_FORMAT")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

fn write_moments(dir: &Path, name: &str, support: (&str, &str), moments: &[String]) -> String {
    let path = dir.join(name);
    let body = serde_json::json!({ "support": [support.0, support.1], "moments": moments });
    std::fs::write(&path, body.to_string()).unwrap();
    path.display().to_string()
}

fn psc_moments(n: usize, max: u32) -> Vec<String> {
    let d: dirmix::DistributionSpec = format!("psc:{}/2,1", n - 1).parse().unwrap();
    d.moments(max)
        .moments
        .iter()
        .map(dirmix::exact::format_rational)
        .collect()
}

#[test]
fn theorem1_passes_and_reports_schema() {
    let o = dirmix(&["verify", "theorem1", "--n", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["orders"], serde_json::json!([0, 12]));
    assert!(v.get("counterexample").is_none());
}

#[test]
fn wrong_lambda_fails_with_counterexample() {
    let o = dirmix(&[
        "verify",
        "theorem1",
        "--n",
        "3",
        "--target",
        "psc:3/2,1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["status"], "fail");
    assert_eq!(v["counterexample"]["order"], 2);
    assert_eq!(v["counterexample"]["lhs"], "1/4");
    assert_eq!(v["counterexample"]["rhs"], "1/5");
}

#[test]
fn perturbed_moment_file_fails_verification_and_identification() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_moments(dir.path(), "good.json", ("-1", "1"), &psc_moments(3, 12));
    let o = dirmix(&["verify", "theorem1", "--n", "3", "--target-moments", &good]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));

    let mut m = psc_moments(3, 12);
    m[2] = "251/1000".into();
    let bad = write_moments(dir.path(), "bad.json", ("-1", "1"), &m);
    let o = dirmix(&[
        "verify",
        "theorem1",
        "--n",
        "3",
        "--target-moments",
        &bad,
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["counterexample"]["order"], 2);
    assert_eq!(v["counterexample"]["rhs"], "251/1000");

    let o = dirmix(&[
        "recover",
        "--n",
        "3",
        "--moments-file",
        &bad,
        "--identify",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["identification"]["matches"], serde_json::json!([]));
}

#[test]
fn recover_identifies_generalized_arcsin() {
    let o = dirmix(&[
        "recover",
        "--n",
        "2",
        "--target",
        "beta:1/2,3/2,-1,2",
        "--identify",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["identification"]["validity"]["valid"], true);
    let matches = v["identification"]["matches"].as_array().unwrap();
    assert!(matches.contains(&Value::from("genarcsin:1/4,1")), "{matches:?}");
}

#[test]
fn recover_rejects_non_moment_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let moments: Vec<String> = ["1", "1/2", "3/5"].iter().map(|s| s.to_string()).collect();
    let path = write_moments(dir.path(), "h.json", ("0", "1"), &moments);
    // S_2 moments (1, 1/2, 3/5) recover to E X = 1/2, E X² = 31/40 > E X on [0, 1]
    let o = dirmix(&[
        "recover",
        "--n",
        "2",
        "--moments-file",
        &path,
        "--identify",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["identification"]["validity"]["valid"], false);
}

#[test]
fn moments_json_and_csv() {
    let o = dirmix(&[
        "moments",
        "--dist",
        "arcsin:1",
        "--n",
        "3",
        "--max-order",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["moments"], serde_json::json!(["1", "0", "1/4", "0", "1/8"]));
    assert_eq!(v["support"], serde_json::json!(["-1", "1"]));

    let o = dirmix(&[
        "moments",
        "--dist",
        "arcsin:1",
        "--n",
        "3",
        "--max-order",
        "2",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "order,exact,decimal");
    assert!(lines[3].starts_with("2,1/4,2.5"), "{}", lines[3]);

    let o = dirmix(&[
        "moments",
        "--dist",
        "uniform:0,1",
        "--dirichlet",
        "1,1",
        "--max-order",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(json(&o)["moments"][2], "11/36");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["simulate", "--dist", "arcsin:1", "--n", "0"],
        vec!["verify", "theorem1", "--n", "1"],
        vec!["moments", "--dist", "psc:-1,1", "--n", "2"],
        vec!["verify", "theorem2", "--n", "2", "--alpha", "3/2"],
        vec!["recover", "--n", "2"],
        vec!["density-table", "--dist", "point:0"],
        vec!["moments", "--dist", "arcsin:1", "--n", "3", "--dirichlet", "1,2"],
        vec!["frobnicate"],
    ] {
        let o = dirmix(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn output_file_and_env_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let p = path.display().to_string();
    let o = Command::new(env!("CARGO_BIN_EXE_dirmix"))
        .args(["verify", "lemma1", "--n", "4", "--output", &p])
        .env("DIRMIX_FORMAT", "json")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["claim"], "lemma1");
    assert_eq!(v["orders"], serde_json::json!([1, 12]));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        vec!["moments", "--dist", "genarcsin:1/3,2", "--n", "4", "--format", "csv"],
        vec!["verify", "lemma2", "--a", "1/2,3,5/4", "--format", "json"],
        vec![
            "simulate",
            "--dist",
            "arcsin:1",
            "--n",
            "2",
            "--samples",
            "20000",
            "--seed",
            "0x1234",
            "--format",
            "json",
        ],
        vec!["density-table", "--dist", "psc:1,1", "--points", "11"],
    ] {
        let a = dirmix(&args);
        let b = dirmix(&args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn simulate_json_fields() {
    let o = dirmix(&[
        "simulate",
        "--dist",
        "arcsin:1",
        "--n",
        "3",
        "--samples",
        "50000",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["target"], "psc:1,1");
    assert_eq!(v["samples"], 50000);
    assert_eq!(v["moments"].as_array().unwrap().len(), 8);
    assert!(v["ks_statistic"].as_f64().unwrap() <= v["ks_critical_1pct"].as_f64().unwrap());
}

#[test]
fn density_table_csv() {
    let o = dirmix(&[
        "density-table",
        "--dist",
        "uniform:-1,1",
        "--points",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("-3/4,"));
    assert!(lines[4].starts_with("3/4,"));
}

#[test]
fn every_subcommand_documents_its_flags() {
    let cases: &[(&[&str], &[&str])] = &[
        (&["moments"], &["--dist", "--n", "--dirichlet", "--max-order"]),
        (&["verify", "lemma1"], &["--n", "--max-order"]),
        (&["verify", "lemma2"], &["--a", "--max-order"]),
        (
            &["verify", "theorem1"],
            &["--n", "--max-order", "--target", "--target-moments"],
        ),
        (
            &["verify", "theorem2"],
            &["--n", "--alpha", "--max-order", "--target", "--target-moments"],
        ),
        (
            &["recover"],
            &["--n", "--target", "--moments-file", "--identify", "--max-order"],
        ),
        (&["simulate"], &["--dist", "--n", "--samples", "--seed"]),
        (&["density-table"], &["--dist", "--points"]),
    ];
    for (cmd, flags) in cases {
        let mut args = cmd.to_vec();
        args.push("--help");
        let o = dirmix(&args);
        assert_eq!(code(&o), 0);
        let text = String::from_utf8(o.stdout).unwrap();
        for f in *flags {
            assert!(text.contains(f), "{cmd:?} help lacks {f}");
        }
        assert!(text.contains("--format") && text.contains("--output"));
    }
}
