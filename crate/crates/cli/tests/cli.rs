use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chebotarev"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_reason(out: &Output) -> String {
    let line = String::from_utf8_lossy(&out.stderr);
    let v: Value = serde_json::from_str(line.lines().last().unwrap()).expect("stderr is JSON");
    v["error"].as_str().unwrap().to_string()
}

#[test]
fn places_rational_rows() {
    let out = run(&[
        "places",
        "--q",
        "5",
        "--cover",
        "kummer:2:x",
        "--deg",
        "1",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 6);
}

#[test]
fn places_up_to_degree_two() {
    let out = run(&["places", "--q", "5", "--cover", "kummer:2:x", "--deg", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    // q + 1 rational places and (q^2 - q)/2 monic irreducible quadratics
    assert_eq!(v["places"].as_array().unwrap().len(), 6 + 10);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["cover"], "kummer:2:x");
}

#[test]
fn places_with_oracle_agree() {
    let out = run(&[
        "places",
        "--q",
        "9",
        "--cover",
        "compose:[kummer:2:x,as:x]",
        "--deg",
        "2",
        "--oracle",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = stdout_json(&out);
    for row in v["places"].as_array().unwrap() {
        assert_eq!(row["oracle"], serde_json::json!([]), "{row}");
    }
}

#[test]
fn non_geometric_cover_is_a_config_error() {
    let out = run(&["places", "--q", "5", "--cover", "kummer:2:x^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_reason(&out), "NotGeometric");
    assert!(out.stdout.is_empty());
}

#[test]
fn other_config_errors() {
    let out = run(&["places", "--q", "6", "--cover", "kummer:2:x"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_reason(&out), "Config");
    let out = run(&["places", "--q", "7", "--cover", "kummer:4:x"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_reason(&out), "WildKummer");
    let out = run(&["places", "--q", "5", "--cover", "kummer:2:(x"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_reason(&out), "Parse");
    let out = run(&[
        "verify",
        "--q",
        "5",
        "--cover",
        "compose:[kummer:2:x,const:2]",
        "--gamma",
        "(0,0)",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_reason(&out), "GammaNotInCoset");
    let out = run(&["abstract", "--group", "Z0x"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_reason(&out), "UnknownGroup");
}

#[test]
fn verify_kummer_minus_one() {
    let out = run(&[
        "verify",
        "--q",
        "5",
        "--cover",
        "kummer:2:x",
        "--gamma",
        "-1",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["gamma"], serde_json::json!([1]));
    assert_eq!(reports[0]["corollary"]["sum"], "3");
}

#[test]
fn verify_elliptic_all_gammas() {
    let out = run(&[
        "verify",
        "--q",
        "5",
        "--cover",
        "kummer:2:x^3+x",
        "--gamma",
        "all",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    // fibers over F_5 and over the quadratic twist: 4 and 8 points
    let fibers: Vec<u64> = reports
        .iter()
        .map(|r| r["fibers_total"].as_u64().unwrap())
        .collect();
    assert_eq!(fibers, [4, 8]);
}

#[test]
fn verify_artin_schreier_with_oracle() {
    let out = run(&[
        "verify", "--q", "5", "--cover", "as:x^3", "--oracle", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 5 * 6);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
    let log = String::from_utf8(out.stderr).unwrap();
    assert_eq!(
        log.matches("oracle agrees with the formula at 6/6 places")
            .count(),
        5
    );
}

#[test]
fn abstract_trials() {
    for args in [
        &["--group", "S3", "--trials", "500", "--seed", "7"][..],
        &["--group", "Q8", "--trials", "500"][..],
        &["--group", "Z6", "--trials", "10"][..],
    ] {
        let mut all = vec!["abstract"];
        all.extend_from_slice(args);
        let out = run(&all);
        assert!(out.status.success(), "{args:?}");
        let v = stdout_json(&out);
        assert_eq!(v["pass"], true);
        assert_eq!(v["measure_sums"], v["places"]);
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify",
        "--q",
        "9",
        "--cover",
        "compose:[kummer:4:x,const:2]",
        "--deg",
        "2",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let mut parallel = args.to_vec();
    parallel.extend(["--workers", "4"]);
    let c = run(&parallel);
    assert_eq!(stdout_json(&a)["reports"], stdout_json(&c)["reports"]);

    let x = run(&[
        "abstract", "--group", "D4", "--trials", "50", "--seed", "3", "--format", "csv",
    ]);
    let y = run(&[
        "abstract", "--group", "D4", "--trials", "50", "--seed", "3", "--format", "csv",
    ]);
    assert_eq!(x.stdout, y.stdout);
}

#[test]
fn cover_from_json_file_and_out_flag() {
    let dir = std::env::temp_dir().join(format!("chebotarev-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cover = dir.join("cover.json");
    std::fs::write(&cover, r#"{"kind":"kummer","n":2,"f":"x^3+x"}"#).unwrap();
    let report = dir.join("report.csv");
    let out = run(&[
        "verify",
        "--q",
        "5",
        "--cover",
        &format!("@{}", cover.display()),
        "--format",
        "csv",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.starts_with(
        "gamma,place,e,f,deg_Q,measure_num,measure_den,predicted_fiber,counted_fiber,pass"
    ));
    assert_eq!(text.lines().count(), 1 + 2 * 6);
    std::fs::remove_dir_all(&dir).unwrap();
}
