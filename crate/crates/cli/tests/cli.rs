use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_vortex-atlas"));
    c.env_remove("VORTEX_ATLAS_WORKERS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vortex-atlas-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn solve_collinear_at_one_half() {
    let out = run(&["solve", "--gamma4", "1/2", "--family", "collinear"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "solve");
    let sols = v["collinear"]["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 12);
    assert!(sols.iter().all(|s| s["certificate"]["pass"] == true));
    assert!(v["kite"].is_null());
}

#[test]
fn decimal_and_fraction_inputs_agree() {
    let a = run(&["solve", "--gamma4", "0.5", "--family", "kite"]);
    let b = run(&["solve", "--gamma4", "1/2", "--family", "kite"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["gamma4"], "1/2");
}

#[test]
fn census_row_at_equal_strengths() {
    let out = run(&["census", "--gamma4", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let row = &v["rows"][0];
    assert_eq!(row["published"]["total"], 34);
    assert_eq!(row["matches"], false);
    assert!(!row["discrepancies"].as_array().unwrap().is_empty());
    assert!(row["records"].as_array().unwrap().iter().all(|r| r["certificate"]["pass"] == true));
}

#[test]
fn census_csv_has_fixed_columns() {
    let out = run(&["census", "--gamma4", "-2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "gamma4,collinear,convex,concave_interior,concave_exterior,equilateral,rhombus_extra,total,paper_total,match"
    );
    assert_eq!(lines.next().unwrap(), "-2,0,6,0,0,2,0,8,8,true");
}

#[test]
fn curves_export_f_zero_and_pole_curve() {
    let out = run(&["curves", "--plot", "f-zero", "--bounds", "-3:3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("curve,arc,k,l,gamma4\n"));
    let mut f_rows = 0;
    let mut pole_rows = 0;
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let (k, l): (f64, f64) = (cols[2].parse().unwrap(), cols[3].parse().unwrap());
        assert!((-3.0..=3.0).contains(&k) && (-3.0..=3.0).contains(&l));
        match cols[0] {
            "f-zero" => f_rows += 1,
            "pole" => {
                pole_rows += 1;
                assert!((l - (1.0 - k * k) / (2.0 * k)).abs() < 1e-12);
            }
            other => panic!("unexpected curve {other}"),
        }
    }
    assert!(f_rows > 100 && pole_rows > 100);
}

#[test]
fn certify_reports_pass_and_failure() {
    let square = run(&["certify", "--gamma4", "1", "--positions", "-1,0;1,0;0,-1;0,1"]);
    assert_eq!(square.status.code(), Some(0));
    assert_eq!(json(&square)["certificate"]["pass"], true);
    let skew = run(&["certify", "--gamma4", "1", "--positions", "-1,0;1,0;0.3,-1;0,2"]);
    assert_eq!(skew.status.code(), Some(3));
    assert_eq!(json(&skew)["certificate"]["pass"], false);
}

#[test]
fn rhombus_off_the_square_is_rejected_with_exit_three() {
    let sq = run(&["solve", "--gamma4", "1", "--family", "rhombus"]);
    assert_eq!(sq.status.code(), Some(0));
    let other = run(&["solve", "--gamma4", "1/2", "--family", "rhombus"]);
    assert_eq!(other.status.code(), Some(3));
    let closed_form = run(&["rhombus", "--gamma4", "1/2"]);
    assert_eq!(closed_form.status.code(), Some(0));
    assert_eq!(json(&closed_form)["families"][0]["family"], "A");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["solve"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--gamma4", "one"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--gamma4", "1", "--eps", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--range", "2:1"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--range", "0:1", "--samples", "1"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn out_file_is_written_and_runs_are_byte_identical() {
    let dir = scratch("out");
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for p in [&a, &b] {
        let out = run(&["census", "--gamma4", "2", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let leftovers: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().ends_with(".tmp"))
        .collect();
    assert!(leftovers.is_empty());
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = scratch("config");
    let cfg = dir.join("run.cfg");
    fs::write(&cfg, "# census defaults\ngamma4 = -2\nformat = csv\n").unwrap();
    let from_file = run(&["census", "--config", cfg.to_str().unwrap()]);
    assert_eq!(from_file.status.code(), Some(0));
    assert!(String::from_utf8(from_file.stdout).unwrap().contains("\n-2,"));
    let overridden = run(&["census", "--config", cfg.to_str().unwrap(), "--gamma4", "2"]);
    assert!(String::from_utf8(overridden.stdout).unwrap().contains("\n2,"));
    fs::write(&cfg, "gamma4\n").unwrap();
    assert_eq!(run(&["census", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn worker_count_does_not_change_artifacts() {
    let args = ["sweep", "--range", "3/2:5/2", "--samples", "3", "--format", "csv"];
    let one = bin().args(args).env("VORTEX_ATLAS_WORKERS", "1").output().unwrap();
    let four = bin().args(args).arg("--workers").arg("4").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    let totals: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(7).unwrap()).collect();
    assert_eq!(totals.len(), 3);
    assert!(totals.windows(2).all(|w| w[0] == w[1]));
    let zero = bin().args(args).env("VORTEX_ATLAS_WORKERS", "0").output().unwrap();
    assert_eq!(zero.status.code(), Some(2));
}
