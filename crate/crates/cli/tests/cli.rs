use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klslalom"))
        .args(args)
        .output()
        .expect("spawn klslalom")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn kl_both_on_longest_element() {
    let o = run(&["kl", "--group", "A3", "--u", "", "--v", "1 2 1 3 2 1", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("P = 1\n").count(), 2);
    assert!(out.ends_with("MATCH\n"));
}

#[test]
fn kl_nontrivial_json() {
    let o = run(&["--json", "kl", "--group", "A3", "--v", "2 1 3 2", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["slalom"]["coeffs"], serde_json::json!([1, 1]));
    assert_eq!(v["match"], Value::Bool(true));
    assert_eq!(v["length"], 4);
}

#[test]
fn known_polynomials() {
    let o = run(&["omega", "--t", "00100"]);
    assert_eq!(stdout(&o), "-1*q + 2*q^2\n");
    let o = run(&["upsilon", "--e", "001010"]);
    assert_eq!(stdout(&o), "-1*q^3 + 1*q^4\n");
    let o = run(&["omega", "--t", "00100", "--tilde"]);
    assert_eq!(stdout(&o), "-1*q + 2*q^2 - 2*q^4 + 1*q^5\n");
}

#[test]
fn omega_paths() {
    let o = run(&["--json", "omega", "--t", "00100", "--paths"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let paths = v["paths"].as_array().unwrap();
    assert_eq!(paths.len(), 3);
    for p in paths {
        let s = p["steps"].as_str().unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.chars().all(|c| c == '+' || c == '-'));
    }
}

#[test]
fn dbasis_has_eight_terms() {
    let o = run(&["--json", "dbasis", "--t", "00100"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 8);
}

#[test]
fn btable_rows() {
    let o = run(&["btable", "--group", "A2", "--v", "1 2 1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<Vec<&str>> = out.lines().map(|l| l.split('\t').collect()).collect();
    assert!(rows.iter().all(|r| r.len() == 3));
    assert_eq!(rows[0], vec!["", "1", "1"]);
    let o = run(&["btable", "--group", "A2", "--v", "1 2 1", "--k", "3"]);
    assert!(stdout(&o).lines().all(|l| l.split('\t').next().unwrap().len() == 2));
}

#[test]
fn cdindex_json_shape() {
    let o = run(&["--json", "cdindex", "--group", "A2", "--v", "1 2", "--ab"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for pair in v["cd"].as_array().unwrap() {
        assert!(pair[0].is_string() && pair[1].is_i64());
    }
    assert!(v["ab"].is_array());
}

#[test]
fn ftilde_and_verify() {
    let o = run(&["ftilde", "--group", "A2", "--v", "1 2 1"]);
    assert!(stdout(&o).contains("degree 3:"));
    let o = run(&["verify", "--suite", "norel", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
    let o = run(&["--json", "verify", "--suite", "finalsvs"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "finalsvs");
    assert!(v["instances"].as_array().unwrap().iter().all(|i| i["pass"] == true));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["kl", "--group", "A3", "--v", "9"]).status.code(), Some(1));
    assert_eq!(run(&["kl", "--group", "Z3", "--v", "1"]).status.code(), Some(1));
    assert_eq!(run(&["omega", "--t", "011"]).status.code(), Some(1));
    assert_eq!(run(&["kl", "--group", "A2", "--u", "1", "--v", "2"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn deterministic_output() {
    let args = ["--json", "btable", "--group", "B3", "--v", "1 2 3 2 1", "--order", "good:2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn matrix_file_group() {
    let dir = std::env::temp_dir().join(format!("klslalom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2.txt");
    std::fs::write(&path, "2\n1 3\n3 1\n").unwrap();
    let o = run(&["kl", "--group", path.to_str().unwrap(), "--v", "1 2 1", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("MATCH\n"));
    std::fs::remove_dir_all(&dir).ok();
}
