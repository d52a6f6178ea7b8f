use std::process::{Command, Output};

use tempfile::tempdir;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cl3-rashba"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn rows(text: &str) -> Vec<Vec<String>> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    rd.records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn verify_default_passes() {
    let out = bin(&["verify", "--samples", "20", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("test_id,module,claim,status,max_residual,threshold,samples,detail"));
    assert!(rows(&text).iter().all(|r| r[3] == "pass"));
}

#[test]
fn verify_tiny_tolerance_exits_one() {
    let out = bin(&["verify", "--samples", "5", "--tol", "1e-16"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_gamma_exits_two() {
    let out = bin(&["verify", "--gamma", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gamma"));
}

#[test]
fn unknown_flag_exits_two() {
    assert_eq!(bin(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(bin(&[]).status.code(), Some(2));
}

#[test]
fn zero_beta_is_degenerate() {
    let out = bin(&["spectrum", "--beta", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate splitting"));
}

#[test]
fn unit_circle_gives_flat_bands() {
    let out = bin(&["spectrum", "--gamma", "0.4", "--beta", "1", "--grid", "circle:1:12", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(r.len(), 12);
    for row in r {
        assert!((num(&row[4]) - 2.0).abs() < 1e-12);
        assert!(num(&row[5]).abs() < 1e-12);
    }
}

#[test]
fn bands_do_not_depend_on_gamma() {
    let out = bin(&["spectrum", "--gamma", "-0.7,0.5", "--beta", "1.5", "--grid", "-1:2:3", "--format", "csv"]);
    let r = rows(&String::from_utf8(out.stdout).unwrap());
    let (a, b) = r.split_at(r.len() / 2);
    for (x, y) in a.iter().zip(b) {
        assert_eq!(x[4], y[4]);
        assert_eq!(x[5], y[5]);
        assert_eq!((&x[2], &x[3]), (&y[2], &y[3]));
    }
}

#[test]
fn texture_is_planar_and_winds_at_gamma_zero() {
    let out = bin(&["texture", "--gamma", "0", "--beta", "1", "--grid", "circle:1.5:8", "--format", "csv"]);
    let r = rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(r.len(), 16);
    for row in &r {
        let (p1, p2) = (num(&row[2]), num(&row[3]));
        let (v1, v2, v3) = (num(&row[5]), num(&row[6]), num(&row[7]));
        assert!(v3.abs() < 1e-12);
        // upper band of β(σ₁p₂ − σ₂p₁) points along (p₂, −p₁)
        let sign = if row[4] == "plus" { 1.0 } else { -1.0 };
        let r = p1.hypot(p2);
        assert!((v1 - sign * p2 / r).abs() < 1e-12, "{row:?}");
        assert!((v2 + sign * p1 / r).abs() < 1e-12, "{row:?}");
    }
}

#[test]
fn texture_direction_moves_with_gamma() {
    let out = bin(&["texture", "--gamma", "0,0.5", "--beta", "1", "--grid", "1:1:1,2:2:1", "--format", "csv"]);
    let r = rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(r.len(), 4);
    let angle = |row: &Vec<String>| num(&row[6]).atan2(num(&row[5]));
    assert!((angle(&r[0]) - angle(&r[2])).abs() > 1e-3);
}

#[test]
fn report_round_trips_through_files() {
    let dir = tempdir().unwrap();
    let json = dir.path().join("r.json");
    let csv_path = dir.path().join("r.csv");
    let out = bin(&["verify", "--samples", "6", "--seed", "3", "--out", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = bin(&["report", json.to_str().unwrap(), "--out", csv_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let direct = bin(&["verify", "--samples", "6", "--seed", "3", "--format", "csv"]);
    assert_eq!(std::fs::read(&csv_path).unwrap(), direct.stdout);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let out = bin(&["spectrum", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(2));
}
