//! End-to-end tests of the binary: exit-code contract, report schema,
//! determinism, and the documented usage examples.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bannai-ito"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_small_degree_passes_with_exit_zero() {
    let out = run(&[
        "verify",
        "--realization",
        "b3-scalar",
        "--suite",
        "osp-core",
        "--suite",
        "theorem-3-7",
        "--degree",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let rep: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rep["status"], "pass");
    assert_eq!(rep["config"]["degree"], 1);
}

#[test]
fn degree_zero_is_a_weak_but_valid_certificate() {
    let out = run(&[
        "verify",
        "--realization",
        "b3-scalar",
        "--suite",
        "theorem-3-7",
        "--degree",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let rep: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let degree = &rep["suites"][0]["identities"][0]["degree_certified"];
    assert_eq!(degree, &Value::from(0));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = run(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn inapplicable_suite_is_a_usage_error() {
    let out = run(&[
        "verify",
        "--realization",
        "z2-scalar",
        "--suite",
        "hyperoct-structure",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_realization_and_bad_params_are_usage_errors() {
    assert_eq!(
        run(&["verify", "--realization", "b4-scalar"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "--param", "q=1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--param", "a=1/0"]).status.code(), Some(2));
}

#[test]
fn negative_control_fails_with_witnesses_and_exit_one() {
    let out = run(&[
        "verify",
        "--suite",
        "hyperoct-structure",
        "--degree",
        "1",
        "--negative-control",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let rep: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rep["status"], "fail");
    let identities = rep["suites"][0]["identities"].as_array().unwrap();
    let failing: Vec<&Value> = identities
        .iter()
        .filter(|i| i["status"] == "fail")
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|i| !i["witness"].is_null()));
}

#[test]
fn parameter_specialization_passes() {
    let out = run(&[
        "verify",
        "--suite",
        "bi-reduction",
        "--degree",
        "1",
        "--param",
        "a=0",
        "--param",
        "b=3/2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let rep: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rep["config"]["params"]["b"], "3/2");
}

#[test]
fn apply_examples_from_the_interface_contract() {
    let out = run(&["apply", "D_1", "x1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "(4*a + 2*b + 1)");

    let out = run(&["apply", "Q_12 + Q_13", "1"]);
    assert_eq!(stdout(&out).trim(), "2");

    let out = run(&["apply", "[A_minus, A_plus]", "1"]);
    assert_eq!(stdout(&out).trim(), "(12*a + 6*b + 3)");

    // braces in names, clifford realization, parameter substitution
    let out = run(&[
        "apply",
        "C_{123}",
        "1",
        "--realization",
        "b3-clifford",
        "--param",
        "a=0",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["apply", "D_1", "x0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["apply", "Nope", "x1"]);
    assert_eq!(out.status.code(), Some(2));

    // e factors are rejected in scalar realizations
    let out = run(&["apply", "D_1", "x1*e1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn markdown_format_renders() {
    let out = run(&[
        "verify", "--suite", "osp-core", "--degree", "1", "--format", "markdown",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("# Verification report"));
    assert!(text.contains("| identity | anchor |"));
}

#[test]
fn report_is_deterministic_modulo_wall_times() {
    let args = [
        "verify",
        "--realization",
        "z2-scalar",
        "--suite",
        "all",
        "--degree",
        "1",
    ];
    let a = normalize_wall(&stdout(&run(&args)));
    let b = normalize_wall(&stdout(&run(&args)));
    assert_eq!(a, b);
}

fn normalize_wall(s: &str) -> String {
    let mut v: Value = serde_json::from_str(s).unwrap();
    for suite in v["suites"].as_array_mut().unwrap() {
        for id in suite["identities"].as_array_mut().unwrap() {
            id["wall_ms"] = Value::from(0);
        }
    }
    serde_json::to_string_pretty(&v).unwrap()
}

// ---- schema validation ------------------------------------------------

#[test]
fn reports_validate_against_the_published_schema() {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/report.json");
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();

    for args in [
        vec!["verify", "--suite", "osp-core", "--degree", "1"],
        vec![
            "verify",
            "--realization",
            "b3-clifford",
            "--suite",
            "clifford",
            "--degree",
            "0",
        ],
        vec![
            "verify",
            "--suite",
            "hyperoct-structure",
            "--degree",
            "1",
            "--negative-control",
        ],
        vec![
            "verify",
            "--suite",
            "centralize",
            "--degree",
            "1",
            "--param",
            "a=2",
            "--jobs",
            "2",
        ],
    ] {
        let out = run(&args);
        let rep: Value = serde_json::from_str(&stdout(&out)).unwrap();
        let mut errors = Vec::new();
        validate(&schema, &rep, "$", &mut errors);
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

/// Validator for the subset of JSON Schema the report schema uses:
/// type, enum, required, properties, additionalProperties, items,
/// minimum, oneOf.
fn validate(schema: &Value, value: &Value, path: &str, errors: &mut Vec<String>) {
    if let Some(options) = schema.get("oneOf").and_then(Value::as_array) {
        let matched = options.iter().any(|sub| {
            let mut sub_errors = Vec::new();
            validate(sub, value, path, &mut sub_errors);
            sub_errors.is_empty()
        });
        if !matched {
            errors.push(format!("{path}: matches no oneOf branch"));
        }
        return;
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            errors.push(format!("{path}: {value} not in enum"));
        }
        return;
    }
    if let Some(ty) = schema.get("type") {
        let names: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        let ok = names.iter().any(|n| match *n {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_i64() || value.is_u64(),
            "number" => value.is_number(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            _ => false,
        });
        if !ok {
            errors.push(format!("{path}: type mismatch (want {names:?})"));
            return;
        }
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_i64) {
        if let Some(n) = value.as_i64() {
            if n < min {
                errors.push(format!("{path}: {n} below minimum {min}"));
            }
        }
    }
    if value.is_object() {
        let obj = value.as_object().unwrap();
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    errors.push(format!("{path}: missing required key `{key}`"));
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        for (key, sub_value) in obj {
            let sub_path = format!("{path}.{key}");
            match props.and_then(|p| p.get(key)) {
                Some(sub_schema) => validate(sub_schema, sub_value, &sub_path, errors),
                None => match schema.get("additionalProperties") {
                    Some(Value::Bool(false)) => {
                        errors.push(format!("{path}: unexpected key `{key}`"))
                    }
                    Some(Value::Bool(true)) | None => {}
                    Some(sub_schema) => validate(sub_schema, sub_value, &sub_path, errors),
                },
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for (i, item) in arr.iter().enumerate() {
            validate(items, item, &format!("{path}[{i}]"), errors);
        }
    }
}

#[test]
fn out_file_is_written_atomically_and_parses() {
    let dir = std::env::temp_dir().join(format!("bi-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&[
        "verify",
        "--suite",
        "osp-core",
        "--degree",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rep: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rep["suites"][0]["name"], "osp-core");
    std::fs::remove_dir_all(&dir).ok();
}
