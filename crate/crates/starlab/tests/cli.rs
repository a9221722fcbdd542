//! End-to-end runs of the `starlab` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn starlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starlab"))
        .args(args)
        .env_remove("STARLAB_MAX_CUTOFF")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn z_and_zbar(dir: &Path) -> (String, String) {
    (
        write(dir, "z.json", r#"{"modes":1,"terms":[{"m":[0],"n":[1],"re":1}]}"#),
        write(dir, "zbar.json", r#"{"modes":1,"terms":[{"m":[1],"n":[0],"re":1}]}"#),
    )
}

#[test]
fn voros_z_star_zbar() {
    let dir = tempfile::tempdir().unwrap();
    let (z, zbar) = z_and_zbar(dir.path());
    let out = starlab(&["star", "--kind", "voros", &z, &zbar]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert!(terms.iter().any(|t| t["m"] == serde_json::json!([0]) && t["re"] == 1.0));
    assert!(terms.iter().any(|t| t["m"] == serde_json::json!([1]) && t["n"] == serde_json::json!([1])));

    let reversed = starlab(&["star", &zbar, &z]);
    let v: Value = serde_json::from_str(&stdout(&reversed)).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn extended_level_zero_is_voros() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", r#"{"modes":1,"terms":[{"m":[0],"n":[2],"re":0.5,"im":1},{"m":[1],"n":[1],"re":-2}]}"#);
    let g = write(dir.path(), "g.json", r#"{"modes":1,"terms":[{"m":[2],"n":[1],"re":3},{"m":[0],"n":[0],"im":1}]}"#);
    let voros = starlab(&["star", &f, &g]);
    let extended = starlab(&["star", "--kind", "extended", "--k", "0", &f, &g]);
    assert_eq!(voros.status.code(), Some(0));
    assert_eq!(voros.stdout, extended.stdout);
    let level_two = starlab(&["star", "--kind", "extended", "--k", "2", &f, &g]);
    assert_ne!(voros.stdout, level_two.stdout);
}

#[test]
fn malformed_symbol_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let (z, _) = z_and_zbar(dir.path());
    let bad = write(dir.path(), "bad.json", "{\"modes\":1,\n \"terms\": [}");
    let out = starlab(&["star", &bad, &z]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
    let mismatch = write(dir.path(), "m.json", r#"{"modes":1,"terms":[{"m":[0,1],"n":[1],"re":1}]}"#);
    assert_eq!(starlab(&["star", &mismatch, &z]).status.code(), Some(2));
}

#[test]
fn configuration_errors_exit_2() {
    assert_eq!(starlab(&["verify", "nope"]).status.code(), Some(2));
    let capped = Command::new(env!("CARGO_BIN_EXE_starlab"))
        .args(["verify", "su11"])
        .env("STARLAB_MAX_CUTOFF", "3")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert_eq!(starlab(&["covariance", "--xi", "abc"]).status.code(), Some(2));
}

#[test]
fn verify_heisenberg_passes() {
    let out = starlab(&["verify", "heisenberg", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["suite"], "heisenberg");
    assert_eq!(v["environment"]["seed"], 7);
    for e in v["entries"].as_array().unwrap() {
        let id = e["relation_id"].as_str().unwrap();
        if ["Eq.5", "Eq.6", "Eq.7", "Eq.8", "Eq.9"].iter().any(|p| id.starts_with(p)) {
            assert_eq!(e["status"], "pass", "{id}");
        }
    }
}

#[test]
fn discrepancies_do_not_fail_the_run() {
    let out = starlab(&["su11", "verify", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("paper_discrepancy"));
}

#[test]
fn markdown_has_one_table_per_suite() {
    let out = starlab(&["verify", "all", "--format", "md"]);
    let md = stdout(&out);
    for s in ["heisenberg", "extended", "canonical", "su11", "calogero", "landau"] {
        assert_eq!(md.matches(&format!("## {s}\n")).count(), 1, "{s}");
    }
    assert_eq!(md.matches("| relation |").count(), 6);
}

#[test]
fn csv_round_trips_json_entries() {
    let json: Value = serde_json::from_str(&stdout(&starlab(&["verify", "calogero"]))).unwrap();
    let csv_out = stdout(&starlab(&["verify", "calogero", "--format", "csv"]));
    let mut rd = csv::Reader::from_reader(csv_out.as_bytes());
    let rows: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
    let entries = json["entries"].as_array().unwrap();
    assert_eq!(rows.len(), entries.len());
    for (row, e) in rows.iter().zip(entries) {
        assert_eq!(&row[1], e["relation_id"].as_str().unwrap());
        let err: f64 = row[2].parse().unwrap();
        match e["max_abs_error"].as_f64() {
            Some(x) => assert_eq!(err, x),
            None => assert!(err.is_infinite()),
        }
        assert_eq!(&row[5], e["status"].as_str().unwrap());
    }
}

#[test]
fn tolerance_override_applies() {
    let out = starlab(&["verify", "heisenberg", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(starlab(&["verify", "heisenberg", "--tol", "-1"]).status.code(), Some(2));
}

#[test]
fn icoeff_table() {
    let v: Value = serde_json::from_str(&stdout(&starlab(&["icoeff", "--k", "1", "--pmax", "3"]))).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[2]["exact"], "7/2");
    for r in rows {
        assert!((r["float"].as_f64().unwrap() - r["quadrature"].as_f64().unwrap()).abs() < 1e-10);
    }
    let csv_out = stdout(&starlab(&["icoeff", "--k", "0", "--pmax", "4", "--format", "csv"]));
    assert!(csv_out.starts_with("p,exact,float,quadrature\n"));
    assert!(csv_out.contains("\n4,1/24,"));
}

#[test]
fn calogero_spectrum() {
    let v: Value = serde_json::from_str(&stdout(&starlab(&["calogero", "spectrum", "--eta", "0", "--n", "3"]))).unwrap();
    let e: Vec<f64> = v["energies"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(e, [1.5, 3.5, 5.5]);
    assert_eq!(v["bargmann_index"], 0.75);
}

#[test]
fn landau_star_is_exploratory() {
    let out = starlab(&["landau", "star", "--k", "1", "--l", "0", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["modes"], 1);
    assert_ne!(starlab(&["landau", "star", "--k", "1", "--l", "0", "-2"]).status.code(), Some(0));
}

#[test]
fn same_seed_same_bytes() {
    let a = starlab(&["verify", "extended", "--seed", "11"]);
    let b = starlab(&["verify", "extended", "--seed", "11"]);
    let c = starlab(&["verify", "extended", "--seed", "12"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

/// Field paths and JSON types; map-valued fields are summarised by their
/// value type.
fn shape(v: &Value, path: &str, out: &mut Vec<String>) {
    match v {
        Value::Object(map) if path.ends_with("cutoffs") || path.ends_with("tolerances") => {
            let ty = map.values().next().map_or("empty", kind);
            out.push(format!("{path}: map<{ty}>"));
        }
        Value::Object(map) => {
            out.push(format!("{path}: object"));
            for (k, x) in map {
                shape(x, &format!("{path}.{k}"), out);
            }
        }
        Value::Array(items) => {
            out.push(format!("{path}: array"));
            if let Some(first) = items.first() {
                shape(first, &format!("{path}[]"), out);
            }
        }
        other => out.push(format!("{path}: {}", kind(other))),
    }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "bool",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

#[test]
fn report_schema_matches_golden() {
    let v: Value = serde_json::from_str(&stdout(&starlab(&["verify", "su11"]))).unwrap();
    let mut lines = Vec::new();
    shape(&v, "$", &mut lines);
    let got = lines.join("\n") + "\n";
    let golden = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/report_schema.txt")).unwrap();
    assert_eq!(got, golden, "report schema changed; bump schema_version and update the golden file");
}
