use std::process::{Command, Output};

use serde_json::Value;

fn omfact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omfact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../../../docs/report.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

#[test]
fn row_one_json_report() {
    let o = omfact(&[
        "verify", "--row", "1", "--m", "5", "--q", "2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(schema().is_valid(&v), "{}", stdout(&o));
    let row = &v["rows"][0];
    assert_eq!(row["orbit_size"], 528);
    assert_eq!(row["intersection_order"], "25920");
    assert_eq!(row["expected"]["value"], "25920");
    assert_eq!(row["status"], "verified");
    assert_eq!(row["elapsed_ms"], 0);
}

#[test]
fn constraint_violation_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = omfact(&[
        "verify",
        "--row",
        "1",
        "--m",
        "4",
        "--q",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
    assert!(
        std::fs::read_dir(dir.path()).unwrap().next().is_none(),
        "no partial output"
    );
}

#[test]
fn flag_combinations_are_validated() {
    for args in [
        vec!["verify"],
        vec!["verify", "--include-optional"],
        vec!["verify", "--all-mandatory", "--row", "1"],
        vec!["verify", "--row", "1", "--m", "5"],
        vec!["verify", "--row", "12"],
        vec!["verify", "--row", "1", "--format", "yaml"],
        vec!["identities", "--m", "5"],
        vec!["frobnicate"],
    ] {
        assert_eq!(omfact(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn row_eleven_identities() {
    let o = omfact(&["identities", "--row", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("150,698,880 / 1,152 = 130,815 = (2^9+1)(2^8-1)\n"));
}

#[test]
fn identity_grid_passes() {
    let o = omfact(&["identities", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["passed"] == true));
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["verify", "--row", "3", "--format", "json"];
    let a = omfact(&args);
    let b = omfact(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn mandatory_suite() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("suite.json");
    let o = omfact(&[
        "verify",
        "--all-mandatory",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(schema().is_valid(&v));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    let mut covered: Vec<u64> = rows.iter().map(|r| r["row"].as_u64().unwrap()).collect();
    covered.dedup();
    assert_eq!(covered, [1, 2, 3, 4, 6, 7, 8, 10, 11]);
    for r in rows {
        let want = if r["row"] == 11 {
            "arithmetic-only"
        } else {
            "verified"
        };
        assert_eq!(r["status"], want, "{r}");
    }
}

#[test]
fn timings_flag_fills_elapsed() {
    let o = omfact(&["verify", "--row", "11", "--format", "json", "--timings"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["rows"][0]["elapsed_ms"].as_u64().unwrap() >= 1);
}

#[test]
fn enumerate_counts() {
    let o = omfact(&["enumerate", "--m", "2", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("2 1 4 5\n"));
    assert_eq!(text.lines().count(), 6);
    let o = omfact(&["enumerate", "--m", "2", "--q", "2", "--value", "1"]);
    assert_eq!(stdout(&o).lines().count(), 11);
    let o = omfact(&["enumerate", "--m", "2", "--q", "3", "--gram"]);
    assert!(stdout(&o).starts_with("GRAM-UT\n3 1 4 0\n"));
}

#[test]
fn orders_and_selftest() {
    let o = omfact(&["orders", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["order"] == "25015379558400"));
    let o = omfact(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.contains(": PASS")));
}
