use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-tr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn malformed_a_exits_with_2() {
    let o = run(&["correlators", "--A", "0/0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("zero denominator"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn invalid_knot_and_degenerate_a_are_rejected() {
    for args in [
        &["curve", "--knot", "2,4"][..],
        &["curve", "--knot", "0,3"],
        &["curve", "--knot", "two,three"],
        &["curve", "--A", "0"],
        &["curve", "--A", "1"],
        &["curve", "--A", "3"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn low_order_names_the_needed_order() {
    let o = run(&["toprec", "--gmax", "1", "--nmax", "1", "--order", "4"]);
    assert_eq!(o.status.code(), Some(3));
    let e = stderr(&o);
    assert!(e.contains("needs local order at least"), "{e}");
}

#[test]
fn homfly_unknot_family() {
    // T[1,5] colored by a box: A^5 s*_(1) = (A^6 − A^4)/(q − q⁻¹)
    let v = json(&run(&["homfly", "--knot", "1,5", "--rmax", "1"]));
    assert_eq!(v["kind"], "homfly");
    let colors = v["colors"].as_array().unwrap();
    assert_eq!(colors.len(), 1);
    let c = &colors[0];
    assert_eq!(c["R"], serde_json::json!([1]));
    assert_eq!(c["denominator_q_diffs"], serde_json::json!([1]));
    let mut terms: Vec<(String, String, String)> = c["numerator"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            (
                t["q_exp"].as_str().unwrap().into(),
                t["A_exp"].as_str().unwrap().into(),
                t["coeff"].as_str().unwrap().into(),
            )
        })
        .collect();
    terms.sort();
    assert_eq!(
        terms,
        vec![
            ("0".into(), "4".into(), "-1".into()),
            ("0".into(), "6".into(), "1".into())
        ]
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["correlators", "--gmax", "1", "--nmax", "2", "--degree", "4"][..],
        &["toprec", "--gmax", "1", "--nmax", "2"],
        &["homfly", "--rmax", "3", "--jobs", "3"],
        &["curve", "--knot", "3,2", "--A", "1/4"],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success(), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let one = run(&["correlators", "--degree", "4", "--jobs", "1"]);
    let many = run(&["correlators", "--degree", "4", "--jobs", "4"]);
    assert_eq!(one.stdout, many.stdout);
}

fn all_strings_exact(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_i64() || n.is_u64(),
        Value::Array(a) => a.iter().all(all_strings_exact),
        Value::Object(m) => m.values().all(all_strings_exact),
        _ => true,
    }
}

#[test]
fn no_floats_in_artifacts() {
    for args in [
        &["correlators", "--degree", "4"][..],
        &["toprec", "--gmax", "0", "--nmax", "3"],
        &["curve"],
    ] {
        let v = json(&run(args));
        assert!(all_strings_exact(&v), "{args:?}");
    }
}

#[test]
fn verify_small_range_passes() {
    let o = run(&[
        "verify",
        "--gmax",
        "1",
        "--nmax",
        "2",
        "--degree",
        "4",
        "--cutjoin-degree",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines.len() >= 8);
    for l in &lines {
        assert_eq!(l["status"], "pass", "{l}");
        assert_eq!(l["kind"], "verify");
    }
    let names: Vec<&str> = lines.iter().map(|l| l["name"].as_str().unwrap()).collect();
    for n in [
        "tr_vs_correlators",
        "quadratic_loop",
        "linear_loop",
        "cut_and_join",
    ] {
        assert!(
            names.iter().any(|x| x.starts_with(n)),
            "missing {n}: {names:?}"
        );
    }
}

#[test]
fn csv_export() {
    let o = run(&[
        "correlators",
        "--gmax",
        "0",
        "--nmax",
        "1",
        "--degree",
        "3",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("g,n,mu,coeff"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("0,1,1,"));
    let bad = run(&["toprec", "--format", "csv"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn config_file_is_merged_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.toml");
    std::fs::write(
        &cfg,
        "knot = \"3,2\"\nA = \"1/4\"\ndegree = 3\ngmax = 0\nnmax = 2\n",
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let from_file = json(&run(&["correlators", "--config", cfg]));
    assert_eq!(from_file["knot"], serde_json::json!([3, 2]));
    assert_eq!(from_file["A"], "1/4");
    assert_eq!(from_file["degree"], 3);
    let flag_wins = json(&run(&[
        "correlators",
        "--config",
        cfg,
        "--degree",
        "2",
        "--A",
        "1/6",
    ]));
    assert_eq!(flag_wins["degree"], 2);
    assert_eq!(flag_wins["A"], "1/6");
    assert_eq!(flag_wins["knot"], serde_json::json!([3, 2]));

    std::fs::write(dir.path().join("bad.toml"), "colour = 3\n").unwrap();
    let bad = run(&[
        "curve",
        "--config",
        dir.path().join("bad.toml").to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.json");
    let o = run(&["curve", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(Path::new(&path)).unwrap()).unwrap();
    assert_eq!(v["kind"], "curve");
}

#[test]
fn schema_is_stable_and_rejects_unknown_kinds() {
    let a = run(&["schema"]);
    let b = run(&["schema"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema_version"], 1);
    let o = run(&["schema", "plots"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    for k in ["homfly", "correlators", "toprec", "verify", "curve"] {
        assert!(e.contains(k), "{e}");
    }
}

fn validate(kind: &str, doc: &Value) {
    let schema = json(&run(&["schema", kind]));
    let v = jsonschema::validator_for(&schema).unwrap();
    let errs: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    assert!(errs.is_empty(), "{kind}: {errs:?}");
}

#[test]
fn schemas_validate_fresh_outputs() {
    validate(
        "correlators",
        &json(&run(&["correlators", "--degree", "4"])),
    );
    validate("homfly", &json(&run(&["homfly", "--rmax", "2"])));
    validate(
        "toprec",
        &json(&run(&["toprec", "--gmax", "1", "--nmax", "2"])),
    );
    validate(
        "curve",
        &json(&run(&["curve", "--knot", "3,2", "--A", "1/4"])),
    );
    let o = run(&[
        "verify",
        "--gmax",
        "0",
        "--nmax",
        "2",
        "--degree",
        "3",
        "--cutjoin-degree",
        "2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    for line in String::from_utf8(o.stdout).unwrap().lines() {
        validate("verify", &serde_json::from_str(line).unwrap());
    }
    let mut broken = json(&run(&["correlators", "--degree", "2"]));
    broken["tables"][0]["rows"][0]["coeff"] = serde_json::json!(0.5);
    let schema = json(&run(&["schema", "correlators"]));
    assert!(!jsonschema::validator_for(&schema)
        .unwrap()
        .is_valid(&broken));
}

#[test]
fn full_verify_run_passes() {
    let o = run(&[
        "verify", "--knot", "2,3", "--A", "1/3", "--gmax", "1", "--nmax", "3", "--degree", "6",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 20);
    assert!(text.lines().all(|l| l.contains("\"status\":\"pass\"")));
}
