use std::path::Path;
use std::process::{Command, Output};

fn vibron(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vibron"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("N,xi,ansatz,observable,value,l_sector,r_e"));
    lines.map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn two_boson_cat_energy_sweep() {
    let out = vibron(&[
        "scan", "--n", "2", "--xi-start", "0", "--xi-stop", "1", "--xi-step", "0.25",
        "--observables", "energy", "--ansatz", "cat",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows.len(), 5);
    let xs: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(xs, ["0", "0.25", "0.5", "0.75", "1"]);
    let last: f64 = rows[4][4].parse().unwrap();
    assert!(last.abs() < 1e-12, "{last}");
    assert!(rows.iter().all(|r| r[5].is_empty() && !r[6].is_empty()));
}

#[test]
fn vacuum_point_is_unentangled() {
    let out = vibron(&[
        "scan", "--n", "8", "--xi-start", "0", "--xi-stop", "0",
        "--observables", "linear_entropy", "--ansatz", "exact",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0], ["8", "0", "exact", "linear_entropy", "0", "0", ""]);
}

#[test]
fn entropy_figure_bottom_row_count() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("fig3.csv");
    let out = vibron(&[
        "scan", "--preset", "fig3", "--ansatz", "exact,cat", "--observables", "linear_entropy",
        "--out", path_str(&file),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = data_rows(&std::fs::read_to_string(&file).unwrap());
    assert_eq!(rows.len(), 606);
    assert!(rows.iter().all(|r| !r[4].is_empty()));
}

#[test]
fn output_is_deterministic_and_worker_independent() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, workers: &str| {
        let file = dir.path().join(name);
        let out = vibron(&[
            "scan", "--n", "3,8", "--xi-step", "0.05", "--observables",
            "energy,purity,ipr_basis,lambdas", "--workers", workers, "--out", path_str(&file),
        ]);
        assert_eq!(out.status.code(), Some(0));
        std::fs::read(&file).unwrap()
    };
    let a = run("a.csv", "1");
    let b = run("b.csv", "1");
    let c = run("c.csv", "4");
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn json_output_parses() {
    let out = vibron(&[
        "scan", "--n", "4", "--xi-step", "0.5", "--observables", "radius", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3 * 2);
    assert!(rows.iter().all(|r| r["ansatz"] != "exact"));
    assert_eq!(rows[0]["N"], 4);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scan.cfg");
    std::fs::write(&cfg, "# small sweep\nn = 2, 3\nxi_step = 0.5\nobservables = energy\nansatz = cs\n").unwrap();
    let out = vibron(&["scan", "--config", path_str(&cfg), "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[0] == "5" && r[2] == "cs"));
}

#[test]
fn exit_codes() {
    assert_eq!(vibron(&["--help"]).status.code(), Some(0));
    assert_eq!(vibron(&["scan", "--observables", "energy", "--xi-step", "0"]).status.code(), Some(1));
    assert_eq!(vibron(&["scan", "--observables", "entropy"]).status.code(), Some(1));
    assert_eq!(vibron(&["scan", "--n", "8"]).status.code(), Some(1));
    assert_eq!(vibron(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(vibron(&["solve", "--n", "1", "--xi", "0.5"]).status.code(), Some(1));
    let missing = vibron(&[
        "scan", "--n", "2", "--observables", "energy", "--out", "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(missing.status.code(), Some(3));
    assert_eq!(vibron(&["scan", "--config", "/nonexistent-dir/c.cfg"]).status.code(), Some(3));
}

#[test]
fn selfcheck_passes() {
    let out = vibron(&["selfcheck"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.lines().count() >= 8);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn solve_dumps_state() {
    let out = vibron(&["solve", "--n", "6", "--xi", "0.7", "--ansatz", "cat"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let lambdas: Vec<f64> = v["lambdas"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(lambdas.len(), 7);
    assert!((lambdas.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    let norm: f64 = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["c"].as_f64().unwrap().powi(2))
        .sum();
    assert!((norm - 1.0).abs() < 1e-12);
    assert!(v["r_e"].as_f64().unwrap() > 0.0);
}
