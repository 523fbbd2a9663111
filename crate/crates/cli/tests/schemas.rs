use std::process::Command;

use jsonschema::{Registry, Validator};
use serde_json::Value;

const DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/schemas/");

fn schema(name: &str) -> Value {
    let text = std::fs::read_to_string(format!("{DIR}{name}.schema.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn with_validator(name: &str, check: impl FnOnce(&Validator)) {
    let all: Vec<Value> = ["cover", "place", "report"]
        .into_iter()
        .map(schema)
        .collect();
    let registry = Registry::new()
        .extend(
            all.iter()
                .map(|s| (s["$id"].as_str().unwrap().to_string(), s.clone())),
        )
        .unwrap()
        .prepare()
        .unwrap();
    let validator = jsonschema::options()
        .with_registry(&registry)
        .build(&schema(name))
        .unwrap();
    check(&validator);
}

fn run_json(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_chebotarev"))
        .args(args)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn assert_valid(v: &Validator, instance: &Value) {
    let errors: Vec<String> = v.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn place_rows_match_schema() {
    let out = run_json(&[
        "places",
        "--q",
        "9",
        "--cover",
        "compose:[kummer:2:x,as:t*x]",
        "--deg",
        "2",
        "--oracle",
    ]);
    with_validator("place", |v| {
        for row in out["places"].as_array().unwrap() {
            assert_valid(v, row);
        }
    });
    with_validator("cover", |v| assert_valid(v, &out["config"]["cover_json"]));
}

#[test]
fn verify_report_matches_schema() {
    let out = run_json(&[
        "verify",
        "--q",
        "9",
        "--cover",
        "compose:[kummer:4:x,const:2]",
        "--deg",
        "2",
        "--oracle",
    ]);
    with_validator("report", |v| assert_valid(v, &out));
    let out = run_json(&[
        "verify",
        "--q",
        "5",
        "--cover",
        "compose:[kummer:2:x^3+x,as:x^3]",
    ]);
    with_validator("report", |v| assert_valid(v, &out));
}

#[test]
fn cover_schema_accepts_documented_forms() {
    with_validator("cover", |v| {
        for text in [
            r#"{"kind": "kummer", "n": 2, "f": "x^3+x"}"#,
            r#"{"kind": "kummer", "n": 2, "f": {"num": [0, 1, 0, 1], "den": [1]}}"#,
            r#"{"kind": "artin_schreier", "f": {"num": [[0, 1], 1]}}"#,
            r#"{"kind": "constant", "m": 2}"#,
            r#"{"kind": "composite", "components": [{"kind": "kummer", "n": 2, "f": "x"}, {"kind": "constant", "m": 2}]}"#,
        ] {
            assert_valid(v, &serde_json::from_str(text).unwrap());
        }
        for bad in [
            r#"{"kind": "kummer", "n": 2}"#,
            r#"{"kind": "constant", "m": 0}"#,
            r#"{"kind": "twist"}"#,
        ] {
            assert!(!v.is_valid(&serde_json::from_str(bad).unwrap()), "{bad}");
        }
    });
}
