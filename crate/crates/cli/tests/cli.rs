//! End-to-end behaviour of the `kleinzeta` binary.

use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn kleinzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kleinzeta"))
        .args(args)
        .env_remove("KLEINZETA_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of an NDJSON report, without the header and summary lines.
fn json_rows(out: &Output) -> Vec<Value> {
    stdout(out)
        .lines()
        .skip(1)
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .filter(|v| v.get("summary").is_none())
        .collect()
}

fn ints(v: &Value) -> Vec<i128> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string().parse().unwrap())
        .collect()
}

#[test]
fn count_both_methods_agree() {
    let out = kleinzeta(&[
        "count", "--curve", "klein", "--q", "8", "--method", "both", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_rows(&out);
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["N"] == 24));
    let methods: Vec<&str> = rows.iter().map(|r| r["method"].as_str().unwrap()).collect();
    assert_eq!(methods, ["brute", "formula"]);
}

#[test]
fn count_fermat_cubic() {
    let out = kleinzeta(&["count", "--curve", "fermat:3", "--q", "7", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_rows(&out)[0]["N"], 9);
}

#[test]
fn exit_codes() {
    assert_eq!(
        kleinzeta(&["count", "--curve", "klein", "--q", "49"]).status.code(),
        Some(2)
    );
    assert_eq!(
        kleinzeta(&["count", "--curve", "klein", "--q", "12"]).status.code(),
        Some(2)
    );
    assert_eq!(
        kleinzeta(&["count", "--curve", "hyperbola", "--q", "8"]).status.code(),
        Some(2)
    );
    assert_eq!(kleinzeta(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        kleinzeta(&["zeta", "--curve", "klein", "--p", "7"]).status.code(),
        Some(2)
    );
    let over = kleinzeta(&[
        "--budget-plane",
        "64",
        "count",
        "--curve",
        "klein",
        "--q",
        "128",
        "--method",
        "brute",
    ]);
    assert_eq!(over.status.code(), Some(3));
    let over = kleinzeta(&["--budget-linear", "1000", "zeta", "--curve", "klein", "--p", "11"]);
    assert_eq!(over.status.code(), Some(3));
}

#[test]
fn zeta_rows_follow_the_schema() {
    let out = kleinzeta(&["zeta", "--curve", "klein", "--p", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let row = &json_rows(&out)[0];
    let mut keys: Vec<&str> = row.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(
        keys,
        [
            "counts",
            "curve",
            "functional_eq",
            "numerator",
            "p",
            "r",
            "rh_max_residual"
        ]
    );
    assert_eq!(row["p"], 2);
    assert_eq!(row["r"], 3);
    assert_eq!(ints(&row["numerator"]), [1, 0, 0, 5, 0, 0, 8]);
    assert_eq!(ints(&row["counts"]), [3, 5, 24, 17, 33, 38]);
    assert_eq!(row["functional_eq"], true);
    assert!(row["rh_max_residual"].as_f64().unwrap() < 1e-9);

    let out = kleinzeta(&["zeta", "--curve", "klein", "--p", "3", "--format", "json"]);
    assert_eq!(ints(&json_rows(&out)[0]["numerator"]), [1, 0, 0, 0, 0, 0, 27]);

    let out = kleinzeta(&["zeta", "--curve", "fermat:7", "--p", "2", "--format", "json"]);
    let row = &json_rows(&out)[0];
    let num = row["numerator"].as_array().unwrap();
    assert_eq!(num.len(), 31);
    assert_eq!(num[30].to_string(), 8u128.pow(15).to_string());
}

#[test]
fn ap_table() {
    let out = kleinzeta(&["ap", "--p-range", "2..30", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_rows(&out);
    let find = |p: u64| rows.iter().find(|r| r["p"] == p).unwrap().clone();
    assert_eq!((find(2)["ap"].clone(), find(2)["chi7"].clone()), (1.into(), "ω".into()));
    assert_eq!(
        (find(13)["ap"].clone(), find(13)["chi7"].clone()),
        (0.into(), "1".into())
    );
    assert_eq!(
        (find(29)["ap"].clone(), find(29)["chi7"].clone()),
        (2.into(), "1".into())
    );
    assert!(rows.iter().filter(|r| r["p"] != 7).all(|r| r["verified"] == true));

    let seven = json_rows(&kleinzeta(&["ap", "--p-range", "7..7", "--format", "json"]));
    assert_eq!(seven.len(), 1);
    assert_eq!(seven[0]["note"], "ramified, excluded");

    let three = json_rows(&kleinzeta(&["ap", "--p-range", "3..3", "--format", "json"]));
    assert_eq!(
        (three[0]["ap"].clone(), three[0]["chi7"].clone()),
        (0.into(), "ω²".into())
    );
}

#[test]
fn verify_suites() {
    let out = kleinzeta(&["verify", "--suite", "theorem1", "--p-max", "100", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_rows(&out);
    assert!(rows.iter().all(|r| r["status"] != "fail"));

    let out = kleinzeta(&["verify", "--suite", "theorem1", "--p-max", "7", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let skip = json_rows(&out).into_iter().find(|r| r["subject"] == "7").unwrap();
    assert_eq!(skip["status"], "skip");
    assert_eq!(skip["detail"], "ramified, excluded");

    let out = kleinzeta(&["verify", "--suite", "congruences", "--q-max", "4096"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().last().unwrap().starts_with("summary: fail=0"));

    assert_eq!(kleinzeta(&["verify", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn json_lines_round_trip() {
    for args in [
        vec!["field", "--q", "9"],
        vec!["jacobi", "--q", "29", "--n", "7"],
        vec!["zeta", "--curve", "fermat:7", "--p", "2"],
        vec!["verify", "--suite", "hecke"],
    ] {
        let mut args = args.clone();
        args.extend(["--format", "json"]);
        let text = stdout(&kleinzeta(&args));
        let mut lines = text.lines();
        let header: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
        assert_eq!(header["tool"], "kleinzeta");
        for line in text.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            assert_eq!(serde_json::to_string(&v).unwrap(), line);
        }
    }
}

#[test]
fn csv_and_text_formats() {
    let csv = stdout(&kleinzeta(&[
        "count", "--curve", "klein", "--q", "8", "--method", "both", "--format", "csv",
    ]));
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("# kleinzeta "));
    assert_eq!(lines[1], "curve,q,method,N");
    assert_eq!(&lines[2..], ["klein,8,brute,24", "klein,8,formula,24"]);

    let text = stdout(&kleinzeta(&["zeta", "--curve", "klein", "--p", "2", "--format", "csv"]));
    assert!(text.lines().nth(2).unwrap().contains("\"[1,0,0,5,0,0,8]\""));

    let text = stdout(&kleinzeta(&["field", "--q", "9"]));
    assert!(text.starts_with("# kleinzeta "));
    assert!(text.lines().nth(1).unwrap().starts_with("p "));
}

#[test]
fn runs_are_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_kleinzeta"))
            .args([
                "count", "--curve", "klein", "--q", "4096", "--method", "both", "--format", "json",
            ])
            .env("KLEINZETA_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, run("4").stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn thread_flag_is_overridden_by_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_kleinzeta"))
        .args(["--threads", "0", "field", "--q", "8"])
        .env("KLEINZETA_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn cache_round_trip_and_version_guard() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let cache = path.to_str().unwrap();

    let first = kleinzeta(&["--cache", cache, "count", "--curve", "klein", "--q", "29"]);
    assert_eq!(first.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["version"], 1);
    assert_eq!(doc["counts"]["klein,29"], 24);

    let again = kleinzeta(&["--cache", cache, "count", "--curve", "klein", "--q", "29"]);
    assert_eq!(first.stdout, again.stdout);

    assert_eq!(
        kleinzeta(&["--cache", cache, "ap", "--p-range", "2..13"]).status.code(),
        Some(0)
    );
    let doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["primes"]["2"]["verified"], true);

    // A tampered entry is caught only when re-verification is requested.
    let tampered = fs::read_to_string(&path)
        .unwrap()
        .replace("\"klein,29\": 24", "\"klein,29\": 25");
    fs::write(&path, &tampered).unwrap();
    let trusted = kleinzeta(&[
        "--cache", cache, "count", "--curve", "klein", "--q", "29", "--format", "csv",
    ]);
    assert!(stdout(&trusted).contains("klein,29,formula,25"));
    let checked = kleinzeta(&[
        "--cache",
        cache,
        "--verify-cache",
        "count",
        "--curve",
        "klein",
        "--q",
        "29",
    ]);
    assert_eq!(checked.status.code(), Some(1));

    // Other versions are ignored and never rewritten.
    let foreign = r#"{"version": 2, "counts": {"klein,29": 99}}"#;
    fs::write(&path, foreign).unwrap();
    let out = kleinzeta(&[
        "--cache", cache, "count", "--curve", "klein", "--q", "29", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("klein,29,formula,24"));
    assert_eq!(fs::read_to_string(&path).unwrap(), foreign);
}
