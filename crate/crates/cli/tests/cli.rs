use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_antirips"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("antirips-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p
}

#[test]
fn persistence_on_three_points_of_a_line() {
    let pts = scratch("line3.csv", "0\n1\n3\n");
    let v = json(&["persistence", "--points", pts.to_str().unwrap(), "--flavor", "avr"]);
    assert_eq!(v["schema"], "antirips.barcode/v1");
    let deaths: Vec<String> = v["intervals"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| {
            assert_eq!(b["dim"], 0);
            assert_eq!(b["birth"], "inf");
            b["death"].to_string()
        })
        .collect();
    assert_eq!(deaths, ["3.0", "2.0", "\"-inf\""]);
}

#[test]
fn betti_of_four_points_at_pi() {
    let v = json(&["betti", "--sphere", "1", "--n", "4", "--evenly", "--r", "3.14159265"]);
    assert_eq!(v["rows"][0]["betti"][0], 2);
    let out = run(&["betti", "--sphere", "1", "--n", "4", "--evenly", "--r", "3.14159265,1.5", "--format", "csv"]);
    assert_eq!(stdout(&out), "r,b0,b1,b2\n3.14159265,2,0,0\n1.5,1,0,0\n");
}

#[test]
fn equilateral_triangle_is_one_two_simplex() {
    let v = json(&["complex", "--sphere", "1", "--n", "3", "--evenly", "--r", "2.0943951"]);
    assert_eq!(v["f_vector"], serde_json::json!([3, 3, 1]));
    let dot = stdout(&run(&["complex", "--sphere", "1", "--n", "3", "--evenly", "--r", "2.0943951", "--format", "dot"]));
    assert!(dot.starts_with("graph complex {") && dot.matches("--").count() == 3);
}

#[test]
fn constants_table_covers_one_to_hundred() {
    let out = run(&["constants"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,r_n,s_n");
    assert_eq!(lines.len(), 101);
    let row1: Vec<f64> = lines[1].split(',').map(|x| x.parse().unwrap()).collect();
    assert!((row1[1] - 2.0943951023931957).abs() < 1e-12 && row1[1] == row1[2]);
    let s: Vec<f64> = lines[1..].iter().map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert!(s.windows(2).all(|w| w[0] < w[1]));
    assert!(lines[100].starts_with("100,"));
}

#[test]
fn transport_between_index_measures() {
    let m = scratch("m.csv", "0,1,2\n1,0,1\n2,1,0\n");
    let a = scratch("a.json", r#"{"indices":[0],"weights":[1]}"#);
    let b = scratch("b.json", r#"{"indices":[1,2],"weights":[0.5,0.5]}"#);
    let v = json(&["transport", "--mu", a.to_str().unwrap(), "--nu", b.to_str().unwrap(), "--metric", m.to_str().unwrap()]);
    assert_eq!(v["schema"], "antirips.transport/v1");
    assert_eq!(v["value"], 1.5);
}

#[test]
fn lift_loop_verdicts() {
    assert_eq!(json(&["maps", "lift-loop", "--map", "identity", "--sphere", "1"])["verdict"], "nontrivial");
    assert_eq!(json(&["maps", "lift-loop", "--map", "identity", "--doubled"])["verdict"], "trivial");
    assert_eq!(json(&["maps", "lift-loop", "--map", "constant"])["verdict"], "trivial");
}

#[test]
fn face_coloring_above_the_critical_angle() {
    let v = json(&["color", "faces", "--sphere", "2", "--n", "2000", "--alpha", "2.2363"]);
    assert_eq!(v["proper"], true);
    assert_eq!(v["num_colors"], 4);
    let below = json(&["color", "faces", "--sphere", "2", "--n", "2000", "--alpha", "2.05"]);
    assert_eq!(below["proper"], false);
}

#[test]
fn homsearch_exit_codes() {
    let tri = scratch("tri.csv", "0,1\n1,2\n2,0\n");
    let found = run(&["homsearch", "--g", tri.to_str().unwrap(), "--h-complete", "3"]);
    assert_eq!(found.status.code(), Some(0));
    let none = run(&["homsearch", "--g", tri.to_str().unwrap(), "--h-complete", "2"]);
    assert_eq!(none.status.code(), Some(3));
    let k = (0..14).flat_map(|i| (i + 1..14).map(move |j| format!("{i},{j}\n"))).collect::<String>();
    let big = scratch("k14.csv", &k);
    let slow = run(&["homsearch", "--g", big.to_str().unwrap(), "--h-complete", "13", "--timeout-ms", "0"]);
    assert_eq!(slow.status.code(), Some(2));
}

#[test]
fn errors_exit_one() {
    assert_eq!(run(&["complex", "--r", "1"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    let bad = scratch("bad.csv", "0,1\n2,0\n");
    assert_eq!(run(&["complex", "--matrix", bad.to_str().unwrap(), "--r", "1"]).status.code(), Some(1));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let args = ["persistence", "--sphere", "2", "--n", "14", "--seed", "7", "--flavor", "tavr"];
    let one = bin().args(args).env("ANTIRIPS_THREADS", "1").output().unwrap();
    let four = bin().args(args).args(["--threads", "4"]).output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn cover_dim_report_has_schema() {
    let v = json(&["maps", "cover-dim", "--angle-steps", "5", "--gap-steps", "4", "--weight-steps", "4"]);
    assert_eq!(v["schema"], "antirips.cover_dim/v1");
    assert_eq!(v["failures"], 0);
}
