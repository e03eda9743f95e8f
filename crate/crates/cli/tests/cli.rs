use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};

const SCALAR_JOB: &str =
    r#"{"ell":2,"lambda":["0","2"],"composition":[2],"partitions":[[2]],"roots":[[1,0]]}"#;
const L3_JOB: &str = r#"{"ell":3,"lambda":["0","0","3"],"composition":[1,1],"partitions":[[1],[1]],"roots":[[1,0,0],[0,1,0]]}"#;

fn sra(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sra"))
        .args(args)
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out.status.code().unwrap(), value, text)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

#[test]
fn mckay_three_cycle() {
    let (code, v, _) = sra(&["mckay", "--ell", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["adjacency"], json!([[0, 1, 1], [1, 0, 1], [1, 1, 0]]));
    assert_eq!(v["schema"], "sra/mckay/v1");
}

#[test]
fn simples_for_the_scalar_lambda() {
    let (code, v, _) = sra(&["simples", "--ell", "2", "--lambda", "0", "2"]);
    assert_eq!(code, 0);
    let simples = v["simples"].as_array().unwrap();
    assert_eq!(simples.len(), 1);
    assert_eq!(simples[0]["alpha"], json!([1, 0]));
}

#[test]
fn negative_lambda_values_parse() {
    let (code, v, _) = sra(&["roots", "--ell", "2", "--lambda", "-2", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["sigma_lambda"], json!([[2, 1]]));
}

#[test]
fn deform_scalar_tangent() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(dir.path(), "job.json", SCALAR_JOB);
    let (code, v, _) = sra(&["deform", "--job", job.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["first_order"]["tangent_basis"], json!([["1", "-1"]]));
    assert_eq!(v["verified"], true);
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(
        dir.path(),
        "job.json",
        r#"{"ell":2,"lambda":["-2","4"],"composition":[2],"partitions":[[1,1]],"roots":[[2,1]]}"#,
    );
    let job = job.to_str().unwrap();
    let (_, _, a) = sra(&["deform", "--job", job]);
    let (_, _, b) = sra(&["deform", "--job", job]);
    assert_eq!(a, b);
    let out = dir.path().join("out.json");
    let (code, _, stdout) = sra(&["deform", "--job", job, "--output", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert_eq!(std::fs::read_to_string(out).unwrap(), a);
}

#[test]
fn continue_reaches_the_target() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(dir.path(), "job.json", SCALAR_JOB);
    let (code, v, _) = sra(&["continue", "--job", job.to_str().unwrap(), "--step", "0.1"]);
    assert_eq!(code, 0);
    assert!(v["result"]["residual"].as_f64().unwrap() < 1e-9);
    assert_eq!(v["direction"], json!(["1", "-1"]));
}

#[test]
fn usage_errors_exit_two() {
    let (code, v, _) = sra(&["frobnicate"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "usage");
    let (code, v, _) = sra(&["simples", "--ell", "2", "--lambda", "0", "x/y"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "parse");
    let (code, _, _) = sra(&["simples", "--ell", "2", "--lambda", "0"]);
    assert_eq!(code, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"ell":2,"lambda":["0","2"],"extra":1}"#,
    );
    let (code, _, _) = sra(&["deform", "--job", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, v, _) = sra(&["deform", "--job", "/definitely/missing.json"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "io");
}

#[test]
fn domain_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(dir.path(), "l3.json", L3_JOB);
    let (code, v, _) = sra(&["deform", "--job", job.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], "nonzero_ext");
    let hook = write(
        dir.path(),
        "hook.json",
        r#"{"ell":2,"lambda":["0","2"],"composition":[3],"partitions":[[2,1]],"roots":[[1,0]]}"#,
    );
    let (code, v, _) = sra(&["hyperplanes", "--job", hook.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], "non_rectangular");
    let (code, v, _) = sra(&["roots", "--ell", "2", "--lambda", "1", "-1"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], "degenerate_lambda");
}

#[test]
fn selftest_with_an_empty_catalog_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.json", "");
    let (code, v, _) = sra(&["selftest", "--catalog", empty.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "catalog");
}

#[test]
fn selftest_names_the_suite_hit_by_a_corrupted_lambda() {
    let dir = tempfile::tempdir().unwrap();
    let cat = write(
        dir.path(),
        "cat.json",
        r#"{"version":1,"cases":[{"name":"broken","ell":2,"lambda":["0","3"],"composition":[2],
            "partitions":[[2]],"roots":[[1,0]]}]}"#,
    );
    let (code, v, _) = sra(&[
        "selftest",
        "--catalog",
        cat.to_str().unwrap(),
        "--suite",
        "deformation",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["failed_suites"], json!(["deformation"]));
    let failures = v["report"]["suites"][0]["failures"].as_array().unwrap();
    assert!(failures[0].as_str().unwrap().starts_with("broken"));
}

#[test]
fn default_selftest_fails_only_on_the_ext_defect() {
    let (code, v, _) = sra(&["selftest"]);
    assert_eq!(code, 1);
    assert_eq!(v["failed_suites"], json!(["deformation", "continuation"]));
    for suite in v["report"]["suites"].as_array().unwrap() {
        for f in suite["failures"].as_array().unwrap() {
            assert!(f.as_str().unwrap().starts_with("l3-"), "{f}");
        }
    }
}

#[test]
fn every_output_names_a_shipped_schema() {
    let dir = tempfile::tempdir().unwrap();
    let job = write(dir.path(), "job.json", SCALAR_JOB);
    let job = job.to_str().unwrap();
    let runs: [&[&str]; 7] = [
        &["mckay", "--ell", "2"],
        &["roots", "--ell", "2", "--lambda", "0", "2"],
        &["simples", "--ell", "2", "--lambda", "0", "2"],
        &["hyperplanes", "--job", job],
        &["deform", "--job", job],
        &["trace-check", "--job", job],
        &["continue", "--job", job],
    ];
    for args in runs {
        let (code, v, _) = sra(args);
        assert_eq!(code, 0, "{args:?}");
        let tag = v["schema"].as_str().unwrap();
        let name = tag.trim_start_matches("sra/").replace("/v", ".v");
        let text = std::fs::read_to_string(schema_dir().join(format!("{name}.json"))).unwrap();
        let schema: Value = serde_json::from_str(&text).unwrap();
        for key in schema["required"].as_array().unwrap() {
            assert!(
                v.get(key.as_str().unwrap()).is_some(),
                "{tag}: missing {key}"
            );
        }
    }
}
