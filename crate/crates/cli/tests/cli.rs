use std::process::{Command, Output};

fn prm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prm")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn reduce_prints_reduced_form() {
    let o = prm(&["reduce", "X0^3*X1*X2^2", "--q", "2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "X0*X1*X2^4");
    let o = prm(&["reduce", "X0^5*X1^2 + X1^7", "--q", "3", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "X0*X1^6 + X1^7");
}

#[test]
fn parse_error_exits_two() {
    let o = prm(&["reduce", "X0^2 + ", "--q", "2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn genmat_csv_shape() {
    let o = prm(&["genmat", "--q", "2", "--d", "1", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("monomial,"));
    for row in &lines[1..] {
        assert_eq!(row.split(',').count(), 8);
    }
}

#[test]
fn genmat_json_has_rows() {
    let o = prm(&["--format", "json", "genmat", "--family", "rm", "--q", "3", "--nu", "2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn witness_is_deterministic_and_minimal() {
    let args = ["--format", "json", "--seed", "7", "witness", "--q", "3", "--d", "2", "--m", "2"];
    let a = prm(&args);
    let b = prm(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["weight"], 6);
}

#[test]
fn table_example() {
    let o = prm(&["table", "--q", "2", "--m", "2", "--d", "1..=3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    let params: Vec<(&str, &str, &str)> = rows.iter().map(|r| (r[3], r[6], r[9])).collect();
    assert_eq!(params, [("7", "3", "4"), ("7", "6", "2"), ("7", "7", "1")]);
}

#[test]
fn empty_range_is_not_an_error() {
    let o = prm(&["table", "--q", "2", "--m", "2", "--d", "3..2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn out_of_range_order_exits_two() {
    let o = prm(&["genmat", "--q", "2", "--d", "9", "--m", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(prm(&["bogus"]).status.code(), Some(2));
    assert_eq!(prm(&["genmat", "--q", "2"]).status.code(), Some(2));
    assert_eq!(prm(&["genmat", "--q", "6", "--d", "1", "--m", "2"]).status.code(), Some(2));
}

#[test]
fn count_minwt_with_oracle() {
    let o = prm(&["--format", "json", "count-minwt", "--q", "3", "--d", "2", "--m", "2", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("\"156\"").count(), 3, "{text}");
}

#[test]
fn check_fibers_passes() {
    let o = prm(&["check-fibers", "--q", "3", "--d", "2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1872"));
    let o = prm(&["check-fibers", "--q", "2", "--d", "2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn distribution_of_small_rm_code() {
    let o = prm(&["--format", "json", "distribution", "--family", "rm", "--q", "2", "--d", "1", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"], serde_json::json!({"0": "1", "2": "6", "4": "1"}));
}

#[test]
fn distribution_guard_exits_two() {
    let o = prm(&["--guard", "100", "distribution", "--q", "3", "--d", "3", "--m", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_small_sweep_passes_and_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let p = path.to_str().unwrap();
    let o = prm(&["--out", p, "verify", "--q", "2,3", "--m", "1..=2"]);
    assert_eq!(o.status.code(), Some(0));
    let first = std::fs::read_to_string(&path).unwrap();
    assert!(first.contains("0 failed"), "{first}");
    assert!(!first.contains("FAIL "));
    let o = prm(&["--out", p, "verify", "--q", "2,3", "--m", "1..=2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
}
