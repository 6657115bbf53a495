use std::f64::consts::SQRT_2;
use std::process::{Command, Output};

use serde_json::Value;

fn tripartite(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tripartite"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = tripartite(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn run_ghz_at_optimum_averages_one() {
    let doc = json(&[
        "run",
        "--state",
        "2b",
        "--roles",
        "A,B,C",
        "--protocol",
        "GHZ",
        "--nu",
        "0.7853981633974483",
        "--kappa",
        "0",
    ]);
    let avg = &doc["rows"][0]["averages"];
    for key in ["quadrature", "two_design", "form_value"] {
        assert!(close(avg[key].as_f64().unwrap(), 1.0, 1e-10), "{key}: {}", avg[key]);
    }
    assert_eq!(doc["branches"].as_array().unwrap().len(), 8);
    assert_eq!(doc["inputs"]["seed"], 0);
}

#[test]
fn run_4bi_at_pi_over_8() {
    let doc = json(&[
        "run",
        "--state",
        "4bI",
        "--roles",
        "B,A,C",
        "--protocol",
        "GHZ",
        "--nu",
        "0.39269908169872414",
        "--kappa",
        "0",
    ]);
    let q = doc["rows"][0]["averages"]["quadrature"].as_f64().unwrap();
    assert!(close(q, 7.0 / 12.0 + SQRT_2 / 6.0, 1e-10), "{q}");
}

#[test]
fn degrees_flag_converts_angles() {
    let rad = json(&[
        "run",
        "--state",
        "4bI",
        "--roles",
        "B,A,C",
        "--protocol",
        "GHZ",
        "--nu",
        "0.39269908169872414",
        "--kappa",
        "0",
    ]);
    let deg = json(&[
        "run",
        "--state",
        "4bI",
        "--roles",
        "B,A,C",
        "--protocol",
        "GHZ",
        "--nu",
        "22.5",
        "--kappa",
        "0",
        "--degrees",
    ]);
    let a = rad["rows"][0]["averages"]["two_design"].as_f64().unwrap();
    let b = deg["rows"][0]["averages"]["two_design"].as_f64().unwrap();
    assert!(close(a, b, 1e-12));
}

#[test]
fn invalid_roles_are_a_usage_error() {
    let out = tripartite(&[
        "run",
        "--state",
        "2b",
        "--roles",
        "A,A,C",
        "--protocol",
        "GHZ",
        "--nu",
        "0",
        "--kappa",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_state_is_a_usage_error() {
    let out = tripartite(&["search", "--state", "9z", "--roles", "A,B,C"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_json_is_byte_deterministic() {
    let a = tripartite(&["table", "--format", "json"]);
    let b = tripartite(&["table", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table_rows_carry_reference_values() {
    let doc = json(&["table", "--format", "json"]);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    let row = |id: &str| rows.iter().find(|r| r["id"] == id).unwrap().clone();
    let coeffs = |r: &Value| -> Vec<(i64, i64)> {
        ["a", "b", "c", "d"]
            .iter()
            .map(|k| {
                (
                    r["form"][k]["num"].as_i64().unwrap(),
                    r["form"][k]["den"].as_i64().unwrap(),
                )
            })
            .collect()
    };
    assert_eq!(coeffs(&row("ext-ghz-1")), vec![(5, 9), (0, 1), (2, 9), (0, 1)]);
    assert_eq!(coeffs(&row("ext-ghz-2")), vec![(8, 9), (0, 1), (0, 1), (0, 1)]);
    assert_eq!(coeffs(&row("ext-ghz-3")), vec![(5, 9), (0, 1), (2, 9), (0, 1)]);
    assert_eq!(coeffs(&row("4c-1")), vec![(3, 4), (0, 1), (0, 1), (0, 1)]);
    assert_eq!(coeffs(&row("4c-2")), vec![(1, 2), (0, 1), (1, 6), (0, 1)]);
    assert_eq!(coeffs(&row("4c-3")), vec![(3, 4), (0, 1), (0, 1), (0, 1)]);
    for r in rows {
        assert!(r["flags"].as_array().unwrap().iter().all(|f| f != "form_mismatch"));
    }
}

#[test]
fn csv_and_json_carry_identical_numbers() {
    let args = ["optimize", "--state", "4bI", "--roles", "B,A,C", "--protocol", "GHZ"];
    let doc = json(&[&args[..], &["--format", "json"]].concat());
    let out = tripartite(&[&args[..], &["--format", "csv"]].concat());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let record = lines.next().unwrap();
    let fields = split_csv(record);
    let get = |name: &str| fields[header.iter().position(|h| *h == name).unwrap()].clone();
    let row = &doc["rows"][0];
    for (col, v) in [
        ("a", &row["form"]["a"]["value"]),
        ("b", &row["form"]["b"]["value"]),
        ("c", &row["form"]["c"]["value"]),
        ("nu_star", &row["best"]["nu_star"]),
        ("f_max", &row["best"]["f_max"]),
    ] {
        let from_csv: f64 = get(col).parse().unwrap();
        assert_eq!(from_csv.to_bits(), v.as_f64().unwrap().to_bits(), "{col}");
    }
}

fn split_csv(line: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut quoted = false;
    for ch in line.chars() {
        match ch {
            '"' => quoted = !quoted,
            ',' if !quoted => out.push(String::new()),
            c => out.last_mut().unwrap().push(c),
        }
    }
    out
}

#[test]
fn optimize_type5_case2() {
    let doc = json(&["optimize", "--state", "5", "--roles", "B,A,C", "--protocol", "GHZ"]);
    let best = &doc["rows"][0]["best"];
    assert!(close(
        best["nu_star"].as_f64().unwrap(),
        std::f64::consts::PI / 8.0,
        1e-10
    ));
    assert!(close(best["kappa_star"].as_f64().unwrap(), 0.0, 1e-10));
}

#[test]
fn search_ghz_reaches_one() {
    let doc = json(&["search", "--state", "2b", "--roles", "A,B,C"]);
    let s = &doc["rows"][0]["search"];
    assert!(close(s["f_max_global"].as_f64().unwrap(), 1.0, 1e-9));
    assert_eq!(s["family"], "GHZ");
}

#[test]
fn search_tri_bell_finds_ghz_family_table() {
    // The sweep's best table for this assignment has unequal rows, at 8/9.
    let doc = json(&["search", "--state", "3a", "--roles", "B,C,A"]);
    let s = &doc["rows"][0]["search"];
    assert!(close(s["f_max_global"].as_f64().unwrap(), 8.0 / 9.0, 1e-9));
    assert_eq!(s["family"], "GHZ");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("tripartite-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.md");
    let out = tripartite(&[
        "optimize",
        "--state",
        "2b",
        "--roles",
        "A,B,C",
        "--protocol",
        "GHZ",
        "--format",
        "markdown",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("ν = π/4"));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn unwritable_out_path_is_an_io_error() {
    let out = tripartite(&[
        "optimize",
        "--state",
        "2b",
        "--roles",
        "A,B,C",
        "--protocol",
        "GHZ",
        "--out",
        "/nonexistent-dir/x.json",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
