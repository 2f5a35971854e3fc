use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delaunay-lab"))
        .arg("--out")
        .arg(out)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn orbit_reports_closed_form_period() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["orbit", "--eps", "0.5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = json(&dir.path().join("orbit.json"));
    let r = doc["data"]["R"].as_f64().unwrap();
    assert!((r - std::f64::consts::PI).abs() < 1e-8);
    assert_eq!(doc["provenance"]["tool"], "delaunay-lab");
    let text = std::fs::read_to_string(dir.path().join("orbit.csv")).unwrap();
    assert!(text.starts_with("# delaunay-lab"));
    let (header, rows) = csv_rows(&dir.path().join("orbit.csv"));
    assert_eq!(header, ["t", "u", "v", "r"]);
    assert_eq!(rows.len(), 257);
}

#[test]
fn invalid_arguments_exit_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["orbit", "--eps", "2.0"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["--n", "2", "orbit", "--eps", "0.1"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["verify", "--only", "nope"]).status.code(), Some(2));
}

#[test]
fn relindex_prints_summary() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["relindex", "--ends", "0.2,0.3,0.4"]);
    assert!(o.status.success());
    let line = String::from_utf8(o.stdout).unwrap();
    let v: Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    assert_eq!(v["dim_B"], 3);
    assert_eq!(v["rel_index"], 6);
}

#[test]
fn lowest_band_edge_for_mode_zero() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["bands", "--eps", "0.3"]).status.success());
    let doc = json(&dir.path().join("bands.json"));
    let edge = doc["data"]["bands"][0][0].as_f64().unwrap();
    assert!((edge + 4.0).abs() < 1e-8, "{edge}");
}

#[test]
fn moduli_table_ratio_is_constant() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["moduli-table", "--eps-grid", "0.1,0.2,0.3,0.4"]);
    assert!(o.status.success());
    let (header, rows) = csv_rows(&dir.path().join("moduli.csv"));
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let (h, ratio) = (col("H"), col("D_over_H"));
    assert!(rows.windows(2).all(|w| w[1][h] < w[0][h]));
    let c4 = 12.0 * std::f64::consts::PI.powi(2);
    for row in &rows {
        assert!((row[ratio] / c4 - 1.0).abs() < 1e-5);
    }
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = run(dir.path(), &["verify", "--only", "pohozaev"]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));
    assert!(dir.path().join("verify.json").exists());
    assert_eq!(run(dir.path(), &["verify", "--only", "4", "--tighten", "1000"]).status.code(), Some(1));
}

#[test]
fn outputs_are_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        assert!(run(dir.path(), &["jacobi", "--eps", "0.25", "--n", "5"]).status.success());
    }
    for name in ["jacobi.csv", "jacobi.json"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
}
